#include "bnk/chainmap.hpp"

#include <algorithm>

namespace bnk {

std::optional<std::pair<int, int>> ChainMap::bidegree() const {
    if (comps.size() != 1) return std::nullopt;
    return std::make_pair(comps[0].dH, comps[0].dQ);
}

std::vector<std::pair<int, int>> ChainMap::bidegrees() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& c : comps) out.emplace_back(c.dH, c.dQ);
    return out;
}

bool ChainMap::isZero() const {
    for (const auto& c : comps)
        for (const auto& [k, m] : c.blocks)
            if (!m.empty()) return false;
    return true;
}

SparseVec ChainMap::apply(int deg, const SparseVec& v, int dH, int dQ) const {
    for (const auto& c : comps) {
        if (c.dH != dH || c.dQ != dQ) continue;
        auto it = c.blocks.find(deg);
        if (it == c.blocks.end()) return {};
        return applyMatrix(it->second, v);
    }
    return {};
}

MapBuilder::MapBuilder(std::shared_ptr<const BNComplex> src, std::shared_ptr<const BNComplex> tgt,
                       std::string name)
    : src_(std::move(src)), tgt_(std::move(tgt)), name_(std::move(name)) {}

void MapBuilder::add(int srcDeg, int srcIdx, int tgtDeg, int tgtIdx, int exp) {
    int qs = src_->gens.at(srcDeg)[srcIdx].grQ;
    int qt = tgt_->gens.at(tgtDeg)[tgtIdx].grQ;
    int dQ = qt - 2 * exp - qs;
    trip_[{tgtDeg - srcDeg, dQ}][srcDeg].emplace_back(tgtIdx, srcIdx, exp);
}

ChainMap MapBuilder::build() const {
    ChainMap f;
    f.name = name_;
    f.source = src_;
    f.target = tgt_;
    for (const auto& [bd, perDeg] : trip_) {
        MapComponent comp{bd.first, bd.second, {}};
        for (const auto& [k, t] : perDeg) {
            MonomialMatrix shape(tgt_->qGradings(k + bd.first), src_->qGradings(k), bd.second);
            auto m = MonomialMatrix::fromTriplets(std::move(shape), t);
            if (!m.empty()) comp.blocks.emplace(k, std::move(m));
        }
        if (!comp.blocks.empty()) f.comps.push_back(std::move(comp));
    }
    return f;
}

ChainMap zeroMap(std::shared_ptr<const BNComplex> src, std::shared_ptr<const BNComplex> tgt) {
    ChainMap f;
    f.name = "0";
    f.source = std::move(src);
    f.target = std::move(tgt);
    return f;
}

ChainMap identityMap(std::shared_ptr<const BNComplex> c) { return scalarMap(std::move(c), 0); }

ChainMap scalarMap(std::shared_ptr<const BNComplex> c, int k) {
    ChainMap f;
    f.name = k == 0 ? "id" : "h^" + std::to_string(k);
    f.source = c;
    f.target = c;
    MapComponent comp{0, -2 * k, {}};
    for (const auto& [d, g] : c->gens) {
        if (g.empty()) continue;
        comp.blocks.emplace(d, scaleByH(MonomialMatrix::identity(c->qGradings(d)), k));
    }
    if (!comp.blocks.empty()) f.comps.push_back(std::move(comp));
    return f;
}

namespace {

void addComponent(std::vector<MapComponent>& comps, const MapComponent& c) {
    auto it = std::find_if(comps.begin(), comps.end(),
                           [&](const MapComponent& x) { return x.dH == c.dH && x.dQ == c.dQ; });
    if (it == comps.end()) {
        comps.push_back(c);
    } else {
        for (const auto& [k, m] : c.blocks) {
            auto jt = it->blocks.find(k);
            if (jt == it->blocks.end())
                it->blocks.emplace(k, m);
            else
                jt->second = matAdd(jt->second, m);
        }
    }
}

void normalize(std::vector<MapComponent>& comps) {
    for (auto& c : comps)
        for (auto it = c.blocks.begin(); it != c.blocks.end();)
            it = it->second.empty() ? c.blocks.erase(it) : std::next(it);
    comps.erase(std::remove_if(comps.begin(), comps.end(),
                               [](const MapComponent& c) { return c.blocks.empty(); }),
                comps.end());
    std::sort(comps.begin(), comps.end(), [](const MapComponent& a, const MapComponent& b) {
        return std::make_pair(a.dH, a.dQ) < std::make_pair(b.dH, b.dQ);
    });
}

}  // namespace

ChainMap addMaps(const ChainMap& f, const ChainMap& g) {
    ChainMap r;
    r.name = f.name + "+" + g.name;
    r.source = f.source;
    r.target = f.target;
    for (const auto& c : f.comps) addComponent(r.comps, c);
    for (const auto& c : g.comps) addComponent(r.comps, c);
    normalize(r.comps);
    return r;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap r;
    r.name = g.name + "o" + f.name;
    r.source = f.source;
    r.target = g.target;
    for (const auto& fc : f.comps)
        for (const auto& gc : g.comps) {
            MapComponent c{fc.dH + gc.dH, fc.dQ + gc.dQ, {}};
            for (const auto& [k, fm] : fc.blocks) {
                auto it = gc.blocks.find(k + fc.dH);
                if (it == gc.blocks.end()) continue;
                auto m = matMul(it->second, fm);
                if (!m.empty()) c.blocks.emplace(k, std::move(m));
            }
            if (!c.blocks.empty()) addComponent(r.comps, c);
        }
    normalize(r.comps);
    return r;
}

ChainMap differentialMap(std::shared_ptr<const BNComplex> c) {
    ChainMap f;
    f.name = "delta";
    f.source = c;
    f.target = c;
    MapComponent comp{1, 0, {}};
    for (const auto& [k, m] : c->diff)
        if (!m.empty()) comp.blocks.emplace(k, m);
    if (!comp.blocks.empty()) f.comps.push_back(std::move(comp));
    return f;
}

bool mapsEqual(const ChainMap& f, const ChainMap& g) { return addMaps(f, g).isZero(); }

ChainCheck verifyChainMap(const ChainMap& f) {
    const auto& S = *f.source;
    const auto& T = *f.target;
    for (const auto& c : f.comps) {
        for (const auto& [k, m] : c.blocks) {
            if (auto bad = m.homogeneityViolation())
                return {false, "block " + std::to_string(k) + " bidegree (" + std::to_string(c.dH) +
                                   "," + std::to_string(c.dQ) + ") cell (" +
                                   std::to_string(bad->first) + "," +
                                   std::to_string(bad->second) + ") not homogeneous"};
        }
        for (const auto& [k, g] : S.gens) {
            if (g.empty()) continue;
            // maps degree k of the source to degree k + dH + 1 of the target
            std::optional<MonomialMatrix> lhs, rhs;
            auto fk = c.blocks.find(k);
            if (fk != c.blocks.end()) lhs = matMul(T.differential(k + c.dH), fk->second);
            auto fk1 = c.blocks.find(k + 1);
            if (fk1 != c.blocks.end()) rhs = matMul(fk1->second, S.differential(k));
            MonomialMatrix diff;
            if (lhs && rhs)
                diff = matAdd(*lhs, *rhs);
            else if (lhs)
                diff = *lhs;
            else if (rhs)
                diff = *rhs;
            else
                continue;
            if (!diff.empty()) {
                auto t = diff.triplets();
                auto [r, col, e] = t.front();
                return {false, "degree " + std::to_string(k) + " bidegree (" +
                                   std::to_string(c.dH) + "," + std::to_string(c.dQ) +
                                   "): source gen " + std::to_string(col) + " -> target gen " +
                                   std::to_string(r) + " h^" + std::to_string(e)};
            }
        }
    }
    return {};
}

}  // namespace bnk
