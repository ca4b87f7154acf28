#pragma once
// Bar-Natan homology as a bigraded F2[h]-module and the invariants read off it.

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "bnk/reduce.hpp"

namespace bnk {

enum class SummandKind { Free, Torsion };

struct Summand {
    int grH = 0;
    int grQ = 0;
    SummandKind kind = SummandKind::Free;
    int order = 0;      // torsion order, 0 for free
    SparseVec witness;  // cycle in the profiled complex at degree grH
};

struct HomologyData;

struct HomologyProfile {
    std::vector<Summand> summands;
    std::shared_ptr<const BNComplex> complex;  // where the witnesses live
    std::shared_ptr<const HomologyData> data;

    /// Sorted (grH, grQ, order) triples; order 0 marks a free summand.
    std::vector<std::tuple<int, int, int>> multiset() const;
    int freeRank() const;
    int torsionCount() const;

    /// Class of a cycle in the summand basis: one entry per summand, torsion
    /// coordinates reduced modulo h^order.  Throws RepresentativeNotCycle.
    std::vector<Poly> coordinates(int deg, const SparseVec& z) const;
};

/// Throws NotAComplex if d^2 != 0.
HomologyProfile computeHomology(std::shared_ptr<const BNComplex> c);

int uInvariant(const HomologyProfile& p);
/// Throws NotAKnotProfile / UnexpectedGap.
int sInvariant(const HomologyProfile& p);
int collapsePage(const HomologyProfile& p);

struct BigradingCell {
    int free = 0;
    std::vector<int> torsion;  // orders, ascending
};

struct InvariantReport {
    int u = 0;
    std::optional<int> s;  // knots only
    int collapsePage = 1;
    int totalTorsionCount = 0;
    int freeRank = 0;
    std::map<std::pair<int, int>, BigradingCell> table;
};

InvariantReport makeReport(const HomologyProfile& p);

/// Is z (at degree deg) in the image of the differential?  Solved directly
/// from the Smith form of the incoming differential.
bool isBoundary(const BNComplex& c, int deg, const SparseVec& z);

/// Scale a homogeneous vector by h^k.
SparseVec shiftVec(const SparseVec& v, int k);

/// Quantum grading of a nonzero homogeneous chain.
int chainGrading(const BNComplex& c, int deg, const SparseVec& v);

}  // namespace bnk
