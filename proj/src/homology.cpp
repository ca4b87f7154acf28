#include "bnk/homology.hpp"

#include <algorithm>

namespace bnk {

namespace {

// Rows >= from of m, renumbered from 0.
MonomialMatrix dropRows(const MonomialMatrix& m, int from) {
    std::vector<int> rq(m.rowQ().begin() + from, m.rowQ().end());
    std::vector<std::tuple<int, int, int>> t;
    for (auto [r, c, e] : m.triplets())
        if (r >= from) t.emplace_back(r - from, c, e);
    return MonomialMatrix::fromTriplets(MonomialMatrix(rq, m.colQ(), m.qShift()), std::move(t));
}

}  // namespace

struct HomologyData {
    ReducedComplex gauss;
    struct Degree {
        int rank = 0;             // rank of the outgoing differential
        MonomialMatrix Vinv;      // kernel coordinates live in rows >= rank
        MonomialMatrix Uprime;    // basis change on the kernel
        std::vector<int> orders;  // per kernel basis vector: order, 0 for free, -1 cancelled
        std::vector<int> summandOf;
    };
    std::map<int, Degree> degrees;
};

SparseVec shiftVec(const SparseVec& v, int k) {
    SparseVec o;
    for (auto [i, e] : v) o.emplace(i, e + k);
    return o;
}

int chainGrading(const BNComplex& c, int deg, const SparseVec& v) {
    if (v.empty()) throw Error(ErrorKind::IndexOutOfRange, "zero chain has no grading");
    auto [i, e] = *v.begin();
    return c.gens.at(deg).at(i).grQ - 2 * e;
}

HomologyProfile computeHomology(std::shared_ptr<const BNComplex> c) {
    if (auto k = dSquaredFailure(*c))
        throw Error(ErrorKind::NotAComplex, "d^2 != 0 at degree " + std::to_string(*k));
    auto data = std::make_shared<HomologyData>();
    data->gauss = gaussEliminate(c);
    const BNComplex& R = *data->gauss.complex;

    HomologyProfile prof;
    prof.complex = c;
    for (const auto& [k, g] : R.gens) {
        if (g.empty()) continue;
        HomologyData::Degree D;
        SnfResult out = smithNormalForm(R.differential(k));
        D.rank = out.rank;
        D.Vinv = out.Vinv;
        const int kdim = static_cast<int>(g.size()) - D.rank;
        if (kdim == 0) {
            data->degrees[k] = std::move(D);
            continue;
        }
        // kernel basis: columns rank.. of V
        MonomialMatrix image = matMul(out.Vinv, R.differential(k - 1));
        for (auto [r, col, e] : image.triplets())
            if (r < D.rank) throw Error(ErrorKind::NotAComplex, "image leaves the kernel");
        MonomialMatrix M = dropRows(image, D.rank);
        SnfResult in = smithNormalForm(M);
        D.Uprime = in.U;
        D.orders.assign(kdim, 0);
        D.summandOf.assign(kdim, -1);
        for (int i = 0; i < in.rank; ++i) D.orders[i] = in.diagonal[i] == 0 ? -1 : in.diagonal[i];

        for (int i = 0; i < kdim; ++i) {
            if (D.orders[i] < 0) continue;
            // witness = V[:, rank..] * Uinv'[:, i]
            SparseVec w;
            for (const auto& x : in.Uinv.col(i))
                for (const auto& y : out.V.col(D.rank + x.row)) addTerm(w, y.row, y.exp + x.exp);
            Summand s;
            s.grH = k;
            s.kind = D.orders[i] == 0 ? SummandKind::Free : SummandKind::Torsion;
            s.order = D.orders[i];
            s.witness = data->gauss.pullBack(k, w);
            s.grQ = chainGrading(*c, k, s.witness);
            D.summandOf[i] = static_cast<int>(prof.summands.size());
            prof.summands.push_back(std::move(s));
        }
        data->degrees[k] = std::move(D);
    }
    prof.data = data;
    return prof;
}

std::vector<Poly> HomologyProfile::coordinates(int deg, const SparseVec& z) const {
    std::vector<Poly> res(summands.size());
    if (z.empty()) return res;
    if (!applyMatrix(complex->differential(deg), z).empty())
        throw Error(ErrorKind::RepresentativeNotCycle, "chain at degree " + std::to_string(deg));
    auto it = data->degrees.find(deg);
    SparseVec y = data->gauss.pushForward(deg, z);
    if (it == data->degrees.end() || y.empty()) return res;
    const auto& D = it->second;
    SparseVec w = applyMatrix(D.Vinv, y);
    SparseVec k;
    for (auto [r, e] : w) {
        if (r < D.rank) throw Error(ErrorKind::RepresentativeNotCycle, "not in the kernel");
        k.emplace(r - D.rank, e);
    }
    for (auto [i, e] : applyMatrix(D.Uprime, k)) {
        int s = D.summandOf[i];
        if (s < 0) continue;
        Poly p;
        p.addMono(e);
        if (D.orders[i] > 0) p.truncate(D.orders[i]);
        res[s] = p;
    }
    return res;
}

std::vector<std::tuple<int, int, int>> HomologyProfile::multiset() const {
    std::vector<std::tuple<int, int, int>> m;
    for (const auto& s : summands) m.emplace_back(s.grH, s.grQ, s.order);
    std::sort(m.begin(), m.end());
    return m;
}

int HomologyProfile::freeRank() const {
    int n = 0;
    for (const auto& s : summands) n += s.kind == SummandKind::Free;
    return n;
}

int HomologyProfile::torsionCount() const {
    return static_cast<int>(summands.size()) - freeRank();
}

int uInvariant(const HomologyProfile& p) {
    int u = 0;
    for (const auto& s : p.summands)
        if (s.kind == SummandKind::Torsion) u = std::max(u, s.order);
    return u;
}

int sInvariant(const HomologyProfile& p) {
    std::vector<int> q;
    for (const auto& s : p.summands)
        if (s.kind == SummandKind::Free) q.push_back(s.grQ);
    if (q.size() != 2)
        throw Error(ErrorKind::NotAKnotProfile, "free rank " + std::to_string(q.size()));
    std::sort(q.begin(), q.end());
    if (q[1] - q[0] != 2)
        throw Error(ErrorKind::UnexpectedGap,
                    "free summands at q=" + std::to_string(q[0]) + "," + std::to_string(q[1]));
    return (q[0] + q[1]) / 2;
}

int collapsePage(const HomologyProfile& p) { return uInvariant(p) + 1; }

InvariantReport makeReport(const HomologyProfile& p) {
    InvariantReport r;
    r.u = uInvariant(p);
    r.collapsePage = collapsePage(p);
    r.freeRank = p.freeRank();
    r.totalTorsionCount = p.torsionCount();
    for (const auto& s : p.summands) {
        auto& cell = r.table[{s.grH, s.grQ}];
        if (s.kind == SummandKind::Free)
            ++cell.free;
        else
            cell.torsion.push_back(s.order);
    }
    for (auto& [k, cell] : r.table) std::sort(cell.torsion.begin(), cell.torsion.end());
    if (p.complex && p.complex->diagram.isKnot()) r.s = sInvariant(p);
    return r;
}

bool isBoundary(const BNComplex& c, int deg, const SparseVec& z) {
    if (z.empty()) return true;
    SnfResult f = smithNormalForm(c.differential(deg - 1));
    SparseVec b = applyMatrix(f.U, z);
    for (auto [i, e] : b) {
        if (i >= f.rank) return false;
        if (e < f.diagonal[i]) return false;
    }
    return true;
}

}  // namespace bnk
