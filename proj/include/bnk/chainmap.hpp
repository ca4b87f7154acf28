#pragma once
// Graded maps between BNComplexes.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bnk/cube.hpp"

namespace bnk {

/// One homogeneous piece of a map: blocks[k] sends degree k to k + dH with
/// declared quantum shift dQ.
struct MapComponent {
    int dH = 0;
    int dQ = 0;
    std::map<int, MonomialMatrix> blocks;
};

/// A map of bigraded complexes, stored as a sum of homogeneous components.
/// Most maps have one component; maps such as f_c^+ mix two bidegrees.
struct ChainMap {
    std::string name;
    std::shared_ptr<const BNComplex> source, target;
    std::vector<MapComponent> comps;  // sorted by (dH, dQ), no duplicates

    /// Bidegree when the map is homogeneous.
    std::optional<std::pair<int, int>> bidegree() const;
    std::vector<std::pair<int, int>> bidegrees() const;
    bool isZero() const;
    SparseVec apply(int deg, const SparseVec& v, int dH, int dQ) const;
};

/// Collects (source gen, target gen, exponent) contributions and sorts them
/// into homogeneous components.
class MapBuilder {
public:
    MapBuilder(std::shared_ptr<const BNComplex> src, std::shared_ptr<const BNComplex> tgt,
               std::string name);
    void add(int srcDeg, int srcIdx, int tgtDeg, int tgtIdx, int exp);
    ChainMap build() const;

private:
    std::shared_ptr<const BNComplex> src_, tgt_;
    std::string name_;
    // (dH, dQ) -> srcDeg -> triplets
    std::map<std::pair<int, int>, std::map<int, std::vector<std::tuple<int, int, int>>>> trip_;
};

ChainMap zeroMap(std::shared_ptr<const BNComplex> src, std::shared_ptr<const BNComplex> tgt);
ChainMap identityMap(std::shared_ptr<const BNComplex> c);
/// h^k * id
ChainMap scalarMap(std::shared_ptr<const BNComplex> c, int k);
ChainMap addMaps(const ChainMap& f, const ChainMap& g);
/// g o f
ChainMap compose(const ChainMap& g, const ChainMap& f);
/// The differential of a complex viewed as a degree (1,0) map to itself.
ChainMap differentialMap(std::shared_ptr<const BNComplex> c);

bool mapsEqual(const ChainMap& f, const ChainMap& g);

struct ChainCheck {
    bool ok = true;
    std::string where;  // first failure
};

/// delta o f == f o delta blockwise, and every block homogeneous.
ChainCheck verifyChainMap(const ChainMap& f);

}  // namespace bnk
