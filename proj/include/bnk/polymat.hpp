#pragma once
// Monomial matrices over F2[h] and their graded Smith normal form.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bnk/error.hpp"

namespace bnk {

/// h^exponent with coefficient 1.  Zero is represented by absence.
struct Monomial {
    int exponent = 0;
};

struct MatEntry {
    int row;
    int exp;
    bool operator==(const MatEntry&) const = default;
};

/// Sparse matrix whose nonzero entries are single monomials h^k.
///
/// A graded matrix carries quantum gradings for its rows (targets) and columns
/// (sources) plus a declared quantum shift s; every entry then satisfies
/// exp = (rowQ - colQ - s) / 2.  Storage is column-major with rows sorted.
class MonomialMatrix {
public:
    MonomialMatrix() = default;
    MonomialMatrix(std::vector<int> rowQ, std::vector<int> colQ, int qShift = 0);
    static MonomialMatrix ungraded(int rows, int cols);
    static MonomialMatrix identity(const std::vector<int>& q);
    static MonomialMatrix identityUngraded(int n);

    /// Build from (row, col, exp) triplets; repeated cells are summed over F2.
    static MonomialMatrix fromTriplets(MonomialMatrix shape,
                                       std::vector<std::tuple<int, int, int>> trip);
    /// Dense helper for tests: -1 marks a zero entry.
    static MonomialMatrix fromDense(const std::vector<std::vector<int>>& exps);

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }
    bool graded() const { return graded_; }
    int qShift() const { return qShift_; }
    const std::vector<int>& rowQ() const { return rowQ_; }
    const std::vector<int>& colQ() const { return colQ_; }

    /// Exponent forced by the gradings at (r, c), if integral and >= 0.
    std::optional<int> expectedExp(int r, int c) const;

    /// Add h^exp at (r, c) over F2.  Equal exponents cancel; a different
    /// exponent in an occupied cell throws NonHomogeneousSum.
    void toggle(int r, int c, int exp);
    std::optional<int> get(int r, int c) const;
    const std::vector<MatEntry>& col(int c) const { return cols_[c]; }
    size_t nnz() const;
    bool empty() const { return nnz() == 0; }

    /// Row mirror: for each row the (col, exp) pairs in column order.
    std::vector<std::vector<std::pair<int, int>>> rowView() const;
    std::vector<std::tuple<int, int, int>> triplets() const;

    /// Checks every entry against the grading rule; returns the first bad cell.
    std::optional<std::pair<int, int>> homogeneityViolation() const;

    MonomialMatrix transposeShape() const;
    bool sameShape(const MonomialMatrix& o) const;
    bool operator==(const MonomialMatrix& o) const;

    std::string toString() const;

private:
    int nrows_ = 0;
    int ncols_ = 0;
    bool graded_ = false;
    int qShift_ = 0;
    std::vector<int> rowQ_, colQ_;
    std::vector<std::vector<MatEntry>> cols_;
};

MonomialMatrix matAdd(const MonomialMatrix& a, const MonomialMatrix& b);
MonomialMatrix matMul(const MonomialMatrix& a, const MonomialMatrix& b);
/// h^k * A; for graded matrices the declared shift drops by 2k.
MonomialMatrix scaleByH(const MonomialMatrix& a, int k);

struct SnfResult {
    std::vector<int> diagonal;  // ascending exponents
    int rank = 0;
    // D = U * M * V with D diagonal in the first `rank` slots.
    MonomialMatrix U, V;
    MonomialMatrix Uinv, Vinv;
    MonomialMatrix D;
    // pivot positions in the original row/column numbering
    std::vector<int> pivotRows, pivotCols;

    const MonomialMatrix& basisChangeSource() const { return V; }
    const MonomialMatrix& basisChangeTargetInverse() const { return Uinv; }
};

/// Graded Smith normal form by minimal-exponent pivoting (ties: lowest
/// column, then lowest row).  With trackBasis=false only the diagonal and
/// pivots are produced.
SnfResult smithNormalForm(const MonomialMatrix& m, bool trackBasis = true);

/// Homogeneous vector over F2[h]: index -> exponent.
using SparseVec = std::map<int, int>;

void addTerm(SparseVec& v, int idx, int exp);
void addScaled(SparseVec& dst, const SparseVec& src, int shift);
SparseVec applyMatrix(const MonomialMatrix& m, const SparseVec& v);

/// Polynomial over F2 as a set of exponents (XOR arithmetic).
struct Poly {
    std::vector<int> exps;  // sorted, distinct
    void addMono(int e);
    void add(const Poly& p);
    void truncate(int order);  // drop exponents >= order
    bool isZero() const { return exps.empty(); }
    bool operator==(const Poly&) const = default;
    std::string toString() const;
};

}  // namespace bnk
