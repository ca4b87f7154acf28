#include "bnk/polymat.hpp"

#include <algorithm>
#include <sstream>

namespace bnk {

MonomialMatrix::MonomialMatrix(std::vector<int> rowQ, std::vector<int> colQ, int qShift)
    : nrows_(static_cast<int>(rowQ.size())),
      ncols_(static_cast<int>(colQ.size())),
      graded_(true),
      qShift_(qShift),
      rowQ_(std::move(rowQ)),
      colQ_(std::move(colQ)),
      cols_(ncols_) {}

MonomialMatrix MonomialMatrix::ungraded(int rows, int cols) {
    MonomialMatrix m;
    m.nrows_ = rows;
    m.ncols_ = cols;
    m.cols_.resize(cols);
    return m;
}

MonomialMatrix MonomialMatrix::identity(const std::vector<int>& q) {
    MonomialMatrix m(q, q, 0);
    for (int i = 0; i < m.ncols_; ++i) m.cols_[i].push_back({i, 0});
    return m;
}

MonomialMatrix MonomialMatrix::identityUngraded(int n) {
    MonomialMatrix m = ungraded(n, n);
    for (int i = 0; i < n; ++i) m.cols_[i].push_back({i, 0});
    return m;
}

MonomialMatrix MonomialMatrix::fromTriplets(MonomialMatrix shape,
                                            std::vector<std::tuple<int, int, int>> trip) {
    for (auto& c : shape.cols_) c.clear();
    std::sort(trip.begin(), trip.end(), [](const auto& x, const auto& y) {
        if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
        return std::get<0>(x) < std::get<0>(y);
    });
    size_t i = 0;
    while (i < trip.size()) {
        auto [r, c, e] = trip[i];
        if (r < 0 || r >= shape.nrows_ || c < 0 || c >= shape.ncols_)
            throw Error(ErrorKind::DimensionMismatch, "triplet outside matrix");
        size_t j = i;
        int parity = 0;
        while (j < trip.size() && std::get<0>(trip[j]) == r && std::get<1>(trip[j]) == c) {
            if (std::get<2>(trip[j]) != e)
                throw Error(ErrorKind::NonHomogeneousSum,
                            "cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
            parity ^= 1;
            ++j;
        }
        if (parity) shape.cols_[c].push_back({r, e});
        i = j;
    }
    return shape;
}

MonomialMatrix MonomialMatrix::fromDense(const std::vector<std::vector<int>>& exps) {
    int r = static_cast<int>(exps.size());
    int c = r ? static_cast<int>(exps[0].size()) : 0;
    MonomialMatrix m = ungraded(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (exps[i][j] >= 0) m.cols_[j].push_back({i, exps[i][j]});
    return m;
}

std::optional<int> MonomialMatrix::expectedExp(int r, int c) const {
    if (!graded_) return std::nullopt;
    int d = rowQ_[r] - colQ_[c] - qShift_;
    if (d < 0 || (d & 1)) return std::nullopt;
    return d / 2;
}

void MonomialMatrix::toggle(int r, int c, int exp) {
    if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_)
        throw Error(ErrorKind::DimensionMismatch, "toggle outside matrix");
    if (graded_ && expectedExp(r, c) != exp)
        throw Error(ErrorKind::NonHomogeneousSum,
                    "h^" + std::to_string(exp) + " at (" + std::to_string(r) + "," +
                        std::to_string(c) + ") breaks the grading");
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const MatEntry& e, int row) { return e.row < row; });
    if (it != col.end() && it->row == r) {
        if (it->exp != exp)
            throw Error(ErrorKind::NonHomogeneousSum,
                        "cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
        col.erase(it);
    } else {
        col.insert(it, {r, exp});
    }
}

std::optional<int> MonomialMatrix::get(int r, int c) const {
    const auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const MatEntry& e, int row) { return e.row < row; });
    if (it != col.end() && it->row == r) return it->exp;
    return std::nullopt;
}

size_t MonomialMatrix::nnz() const {
    size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

std::vector<std::vector<std::pair<int, int>>> MonomialMatrix::rowView() const {
    std::vector<std::vector<std::pair<int, int>>> rv(nrows_);
    for (int c = 0; c < ncols_; ++c)
        for (const auto& e : cols_[c]) rv[e.row].push_back({c, e.exp});
    return rv;
}

std::vector<std::tuple<int, int, int>> MonomialMatrix::triplets() const {
    std::vector<std::tuple<int, int, int>> t;
    for (int c = 0; c < ncols_; ++c)
        for (const auto& e : cols_[c]) t.emplace_back(e.row, c, e.exp);
    return t;
}

std::optional<std::pair<int, int>> MonomialMatrix::homogeneityViolation() const {
    if (!graded_) return std::nullopt;
    for (int c = 0; c < ncols_; ++c)
        for (const auto& e : cols_[c]) {
            auto x = expectedExp(e.row, c);
            if (!x || *x != e.exp) return std::make_pair(e.row, c);
        }
    return std::nullopt;
}

MonomialMatrix MonomialMatrix::transposeShape() const {
    if (graded_) return MonomialMatrix(colQ_, rowQ_, -qShift_);
    return ungraded(ncols_, nrows_);
}

bool MonomialMatrix::sameShape(const MonomialMatrix& o) const {
    if (nrows_ != o.nrows_ || ncols_ != o.ncols_) return false;
    if (graded_ && o.graded_)
        return rowQ_ == o.rowQ_ && colQ_ == o.colQ_ && qShift_ == o.qShift_;
    return true;
}

bool MonomialMatrix::operator==(const MonomialMatrix& o) const {
    return nrows_ == o.nrows_ && ncols_ == o.ncols_ && cols_ == o.cols_;
}

std::string MonomialMatrix::toString() const {
    std::ostringstream os;
    os << nrows_ << "x" << ncols_ << " {";
    bool first = true;
    for (int c = 0; c < ncols_; ++c)
        for (const auto& e : cols_[c]) {
            os << (first ? "" : ", ") << "(" << e.row << "," << c << ")->h^" << e.exp;
            first = false;
        }
    os << "}";
    return os.str();
}

MonomialMatrix matAdd(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (!a.sameShape(b)) throw Error(ErrorKind::DimensionMismatch, "matAdd shapes differ");
    MonomialMatrix r = a;
    for (int c = 0; c < b.cols(); ++c)
        for (const auto& e : b.col(c)) r.toggle(e.row, c, e.exp);
    return r;
}

MonomialMatrix matMul(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch,
                    "matMul " + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    if (a.graded() && b.graded() && a.colQ() != b.rowQ())
        throw Error(ErrorKind::DimensionMismatch, "matMul gradings differ");
    MonomialMatrix shape = (a.graded() && b.graded())
                               ? MonomialMatrix(a.rowQ(), b.colQ(), a.qShift() + b.qShift())
                               : MonomialMatrix::ungraded(a.rows(), b.cols());
    std::vector<std::tuple<int, int, int>> trip;
    std::vector<int> acc(a.rows(), -1);
    std::vector<int> touched;
    for (int j = 0; j < b.cols(); ++j) {
        touched.clear();
        for (const auto& eb : b.col(j)) {
            for (const auto& ea : a.col(eb.row)) {
                int e = ea.exp + eb.exp;
                int& slot = acc[ea.row];
                if (slot == -1) {
                    slot = e;
                    touched.push_back(ea.row);
                } else if (slot == -2) {
                    slot = e;
                } else {
                    if (slot != e)
                        throw Error(ErrorKind::NonHomogeneousSum, "matMul produced a binomial");
                    slot = -2;  // cancelled, but remember the row was touched
                }
            }
        }
        for (int r : touched) {
            if (acc[r] >= 0) trip.emplace_back(r, j, acc[r]);
            acc[r] = -1;
        }
    }
    return MonomialMatrix::fromTriplets(std::move(shape), std::move(trip));
}

MonomialMatrix scaleByH(const MonomialMatrix& a, int k) {
    MonomialMatrix shape = a.graded() ? MonomialMatrix(a.rowQ(), a.colQ(), a.qShift() - 2 * k)
                                      : MonomialMatrix::ungraded(a.rows(), a.cols());
    auto t = a.triplets();
    for (auto& x : t) std::get<2>(x) += k;
    return MonomialMatrix::fromTriplets(std::move(shape), std::move(t));
}

namespace {

// Working copy for elimination: row and column maps kept in sync.
struct WorkMat {
    int R = 0, C = 0;
    std::vector<std::map<int, int>> rows, cols;

    WorkMat(int r, int c) : R(r), C(c), rows(r), cols(c) {}

    static WorkMat from(const MonomialMatrix& m) {
        WorkMat w(m.rows(), m.cols());
        for (int c = 0; c < m.cols(); ++c)
            for (const auto& e : m.col(c)) w.flip(e.row, c, e.exp);
        return w;
    }
    static WorkMat eye(int n) {
        WorkMat w(n, n);
        for (int i = 0; i < n; ++i) w.flip(i, i, 0);
        return w;
    }

    void flip(int r, int c, int e) {
        auto it = rows[r].find(c);
        if (it == rows[r].end()) {
            rows[r][c] = e;
            cols[c][r] = e;
        } else {
            if (it->second != e) throw Error(ErrorKind::NonHomogeneousSum, "SNF elimination");
            rows[r].erase(it);
            cols[c].erase(r);
        }
    }
    // row dst += h^k row src
    void addRow(int dst, int src, int k) {
        std::vector<std::pair<int, int>> s(rows[src].begin(), rows[src].end());
        for (auto [c, e] : s) flip(dst, c, e + k);
    }
    // col dst += h^k col src
    void addCol(int dst, int src, int k) {
        std::vector<std::pair<int, int>> s(cols[src].begin(), cols[src].end());
        for (auto [r, e] : s) flip(r, dst, e + k);
    }
};

MonomialMatrix toMatrix(const WorkMat& w, MonomialMatrix shape, const std::vector<int>& rowPerm,
                        const std::vector<int>& colPerm) {
    // rowPerm[newRow] = oldRow, colPerm[newCol] = oldCol
    std::vector<int> rowInv(w.R), colInv(w.C);
    for (int i = 0; i < w.R; ++i) rowInv[rowPerm[i]] = i;
    for (int j = 0; j < w.C; ++j) colInv[colPerm[j]] = j;
    std::vector<std::tuple<int, int, int>> t;
    for (int r = 0; r < w.R; ++r)
        for (auto [c, e] : w.rows[r]) t.emplace_back(rowInv[r], colInv[c], e);
    return MonomialMatrix::fromTriplets(std::move(shape), std::move(t));
}

std::vector<int> permute(const std::vector<int>& q, const std::vector<int>& perm) {
    std::vector<int> out(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) out[i] = q[perm[i]];
    return out;
}

std::vector<int> iota(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

SnfResult smithNormalForm(const MonomialMatrix& m, bool trackBasis) {
    const int R = m.rows(), C = m.cols();
    WorkMat w = WorkMat::from(m);
    WorkMat U(0, 0), Uinv(0, 0), V(0, 0), Vinv(0, 0);
    if (trackBasis) {
        U = WorkMat::eye(R);
        Uinv = WorkMat::eye(R);
        V = WorkMat::eye(C);
        Vinv = WorkMat::eye(C);
    }
    std::vector<char> rowDone(R, 0), colDone(C, 0);
    SnfResult res;

    while (true) {
        // minimal exponent, then lowest column, then lowest row
        int br = -1, bc = -1, be = 0;
        for (int c = 0; c < C; ++c) {
            if (colDone[c]) continue;
            for (auto [r, e] : w.cols[c]) {
                if (rowDone[r]) continue;
                if (bc < 0 || e < be) {
                    br = r;
                    bc = c;
                    be = e;
                }
            }
        }
        if (bc < 0) break;

        std::vector<std::pair<int, int>> colEntries(w.cols[bc].begin(), w.cols[bc].end());
        for (auto [r, e] : colEntries) {
            if (r == br) continue;
            int k = e - be;
            w.addRow(r, br, k);
            if (trackBasis) {
                U.addRow(r, br, k);
                Uinv.addCol(br, r, k);
            }
        }
        std::vector<std::pair<int, int>> rowEntries(w.rows[br].begin(), w.rows[br].end());
        for (auto [c, e] : rowEntries) {
            if (c == bc) continue;
            int k = e - be;
            w.addCol(c, bc, k);
            if (trackBasis) {
                V.addCol(c, bc, k);
                Vinv.addRow(bc, c, k);
            }
        }
        rowDone[br] = 1;
        colDone[bc] = 1;
        res.pivotRows.push_back(br);
        res.pivotCols.push_back(bc);
        res.diagonal.push_back(be);
    }
    res.rank = static_cast<int>(res.diagonal.size());
    if (!trackBasis) return res;

    std::vector<int> rp = res.pivotRows, cp = res.pivotCols;
    for (int r = 0; r < R; ++r)
        if (!rowDone[r]) rp.push_back(r);
    for (int c = 0; c < C; ++c)
        if (!colDone[c]) cp.push_back(c);
    std::vector<int> idR = iota(R), idC = iota(C);

    if (m.graded()) {
        std::vector<int> newRowQ = permute(m.rowQ(), rp), newColQ = permute(m.colQ(), cp);
        res.U = toMatrix(U, MonomialMatrix(newRowQ, m.rowQ(), 0), rp, idR);
        res.Uinv = toMatrix(Uinv, MonomialMatrix(m.rowQ(), newRowQ, 0), idR, rp);
        res.V = toMatrix(V, MonomialMatrix(m.colQ(), newColQ, 0), idC, cp);
        res.Vinv = toMatrix(Vinv, MonomialMatrix(newColQ, m.colQ(), 0), cp, idC);
        res.D = toMatrix(w, MonomialMatrix(newRowQ, newColQ, m.qShift()), rp, cp);
    } else {
        res.U = toMatrix(U, MonomialMatrix::ungraded(R, R), rp, idR);
        res.Uinv = toMatrix(Uinv, MonomialMatrix::ungraded(R, R), idR, rp);
        res.V = toMatrix(V, MonomialMatrix::ungraded(C, C), idC, cp);
        res.Vinv = toMatrix(Vinv, MonomialMatrix::ungraded(C, C), cp, idC);
        res.D = toMatrix(w, MonomialMatrix::ungraded(R, C), rp, cp);
    }
    return res;
}

void addTerm(SparseVec& v, int idx, int exp) {
    auto it = v.find(idx);
    if (it == v.end()) {
        v.emplace(idx, exp);
    } else {
        if (it->second != exp) throw Error(ErrorKind::NonHomogeneousSum, "vector term");
        v.erase(it);
    }
}

void addScaled(SparseVec& dst, const SparseVec& src, int shift) {
    for (auto [i, e] : src) addTerm(dst, i, e + shift);
}

SparseVec applyMatrix(const MonomialMatrix& m, const SparseVec& v) {
    SparseVec out;
    for (auto [c, e] : v)
        for (const auto& x : m.col(c)) addTerm(out, x.row, x.exp + e);
    return out;
}

void Poly::addMono(int e) {
    auto it = std::lower_bound(exps.begin(), exps.end(), e);
    if (it != exps.end() && *it == e)
        exps.erase(it);
    else
        exps.insert(it, e);
}

void Poly::add(const Poly& p) {
    for (int e : p.exps) addMono(e);
}

void Poly::truncate(int order) {
    while (!exps.empty() && exps.back() >= order) exps.pop_back();
}

std::string Poly::toString() const {
    if (exps.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (i) s += "+";
        s += exps[i] == 0 ? "1" : "h^" + std::to_string(exps[i]);
    }
    return s;
}

}  // namespace bnk
