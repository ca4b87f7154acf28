#pragma once
// Bar-Natan complex of a diagram from the full cube of resolutions.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnk/diagram.hpp"
#include "bnk/polymat.hpp"

namespace bnk {

enum class CircleLabel : uint8_t { Plus = 0, Minus = 1 };

/// m(a, b) as (label, h-exponent) terms.
std::vector<std::pair<CircleLabel, int>> frobeniusMultiply(CircleLabel a, CircleLabel b);
/// Delta(a) as ((first, second), h-exponent) terms.
std::vector<std::pair<std::pair<CircleLabel, CircleLabel>, int>> frobeniusComultiply(CircleLabel a);

struct BNGenerator {
    ResolutionVertex vertex = 0;
    uint32_t labels = 0;  // bit j set: circle j labelled x-
    int grH = 0;
    int grQ = 0;
};

/// Bigraded free F2[h]-complex.  Generators are grouped by homological
/// degree; diff[k] maps degree k to degree k+1 (rows = targets).
struct BNComplex {
    std::string tag;
    PlanarDiagram diagram;
    bool fullCube = false;
    std::map<int, std::vector<BNGenerator>> gens;
    std::map<int, MonomialMatrix> diff;

    // full cube only
    std::vector<StateCircles> states;  // per vertex
    std::unordered_map<uint64_t, std::pair<int, int>> lookup;  // (vertex,labels) -> (deg, idx)

    int size() const;
    int count(int deg) const;
    std::vector<int> qGradings(int deg) const;
    /// Zero matrix of the right shape if the degree has no differential.
    MonomialMatrix differential(int deg) const;
    std::pair<int, int> find(ResolutionVertex v, uint32_t labels) const;
    void rebuildLookup();
};

inline uint64_t genKey(ResolutionVertex v, uint32_t labels) {
    return (static_cast<uint64_t>(v) << 32) | labels;
}

int quantumGrading(const PlanarDiagram& d, ResolutionVertex v, int circles, uint32_t labels);
int homologicalGrading(const PlanarDiagram& d, ResolutionVertex v);

struct BuildOptions {
    int fullCubeCap = 14;
    bool checkDSquared =
#ifdef NDEBUG
        false;
#else
        true;
#endif
};

BNComplex buildComplex(const PlanarDiagram& d, const BuildOptions& opt = {});

/// First degree k with diff[k+1] * diff[k] != 0, if any.
std::optional<int> dSquaredFailure(const BNComplex& c);

}  // namespace bnk
