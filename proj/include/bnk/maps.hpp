#pragma once
// Chain maps between full-cube complexes and their induced maps on homology.

#include <memory>
#include <optional>
#include <vector>

#include "bnk/chainmap.hpp"
#include "bnk/homology.hpp"

namespace bnk {

using ComplexPtr = std::shared_ptr<const BNComplex>;

ComplexPtr makeComplex(const PlanarDiagram& d, const BuildOptions& opt = {});

/// Multiplication by x- at the point on `arc`.  Bidegree (0,-2).
ChainMap basepointX(ComplexPtr c, int arc);

/// m_p : C(K u U) -> C(K).  `cKU` must be K with one extra crossing-free
/// circle (default: the loop with the largest arc id).
ChainMap mergeMap(ComplexPtr cKU, ComplexPtr cK, int p, int unknotArc = -1);
/// Delta_p : C(K) -> C(K u U).
ChainMap splitMap(ComplexPtr cK, ComplexPtr cKU, int p, int unknotArc = -1);

/// The saddle at crossing c of K between its two resolutions K0 -> K1.
struct SaddleMaps {
    PlanarDiagram K0, K1;
    int q = -1, qPrime = -1;  // feet of the saddle, arcs of K0
    ComplexPtr C0, C1;
    ChainMap f, fbar;
};
SaddleMaps saddleMaps(const PlanarDiagram& K, int c);

struct CrossingChange {
    PlanarDiagram Kplus, Kminus;
    int c = -1;
    int p = -1, q = -1;
    ComplexPtr Cplus, Cminus;
    ChainMap fPlus, fMinus;
};
/// f_c^+ and f_c^-; p, q default to the under-strand arcs on either side of c.
CrossingChange crossingChangeMaps(const PlanarDiagram& Kplus, int c, int p = -1, int q = -1);
CrossingChange crossingChangeMaps(ComplexPtr Cplus, int c, int p = -1, int q = -1);

struct HomotopyWitness {
    ChainMap H;         // degree -1
    ChainMap residual;  // dH + Hd + x_p + x_q + h id
    bool ok = false;
};
/// Checks dH + Hd = x_p + x_q + h id with H(a0, a1) = (fbar(a1), 0).
HomotopyWitness homotopyWitnessChangep(ComplexPtr C, int c, int p = -1, int q = -1);

struct HopfMaps {
    HopfSum sum;
    ComplexPtr CK, CL;
    ChainMap i, p, r, s;
    ChainMap iSum, pSum;  // i + s and p + r
};
HopfMaps hopfMaps(const PlanarDiagram& K, int p, Handed handed);
HopfMaps hopfMaps(ComplexPtr CK, int p, Handed handed);

/// Matrix over F2[h] from source summands (columns) to target summands (rows).
struct HomologyMap {
    int rows = 0, cols = 0;
    std::vector<std::vector<Poly>> entry;  // [row][col]
    bool operator==(const HomologyMap&) const = default;
    bool isIdentity() const;
    std::string toString() const;
};

HomologyMap inducedOnHomology(const ChainMap& f, const HomologyProfile& src,
                              const HomologyProfile& tgt);

}  // namespace bnk
