#include "bnk/cube.hpp"

#include <algorithm>
#include <tuple>

namespace bnk {

std::vector<std::pair<CircleLabel, int>> frobeniusMultiply(CircleLabel a, CircleLabel b) {
    using L = CircleLabel;
    if (a == L::Plus && b == L::Plus) return {{L::Plus, 0}};
    if (a == L::Minus && b == L::Minus) return {{L::Minus, 1}};
    return {{L::Minus, 0}};
}

std::vector<std::pair<std::pair<CircleLabel, CircleLabel>, int>> frobeniusComultiply(CircleLabel a) {
    using L = CircleLabel;
    if (a == L::Minus) return {{{L::Minus, L::Minus}, 0}};
    return {{{L::Plus, L::Minus}, 0}, {{L::Minus, L::Plus}, 0}, {{L::Plus, L::Plus}, 1}};
}

int BNComplex::size() const {
    int n = 0;
    for (const auto& [k, g] : gens) n += static_cast<int>(g.size());
    return n;
}

int BNComplex::count(int deg) const {
    auto it = gens.find(deg);
    return it == gens.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<int> BNComplex::qGradings(int deg) const {
    std::vector<int> q;
    auto it = gens.find(deg);
    if (it != gens.end())
        for (const auto& g : it->second) q.push_back(g.grQ);
    return q;
}

MonomialMatrix BNComplex::differential(int deg) const {
    auto it = diff.find(deg);
    if (it != diff.end()) return it->second;
    return MonomialMatrix(qGradings(deg + 1), qGradings(deg), 0);
}

std::pair<int, int> BNComplex::find(ResolutionVertex v, uint32_t labels) const {
    auto it = lookup.find(genKey(v, labels));
    if (it == lookup.end()) return {0, -1};
    return it->second;
}

void BNComplex::rebuildLookup() {
    lookup.clear();
    for (const auto& [k, g] : gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i)
            lookup[genKey(g[i].vertex, g[i].labels)] = {k, i};
}

int homologicalGrading(const PlanarDiagram& d, ResolutionVertex v) {
    return __builtin_popcount(v) - d.nMinus;
}

int quantumGrading(const PlanarDiagram& d, ResolutionVertex v, int circles, uint32_t labels) {
    int minus = __builtin_popcount(labels);
    int plus = circles - minus;
    return d.nPlus - 2 * d.nMinus + __builtin_popcount(v) + plus - minus;
}

namespace {

uint32_t setBit(uint32_t x, int i, bool on) { return on ? (x | (1u << i)) : (x & ~(1u << i)); }

}  // namespace

BNComplex buildComplex(const PlanarDiagram& d, const BuildOptions& opt) {
    const int n = d.crossingCount();
    if (n > opt.fullCubeCap)
        throw Error(ErrorKind::TooLarge, std::to_string(n) + " crossings exceed full-cube cap " +
                                             std::to_string(opt.fullCubeCap));
    BNComplex C;
    C.tag = d.name.empty() ? "full" : d.name;
    C.diagram = d;
    C.fullCube = true;
    const uint32_t V = 1u << n;
    C.states.resize(V);
    for (uint32_t v = 0; v < V; ++v) C.states[v] = resolve(d, v);

    // numeric vertex order then numeric label order inside each degree
    for (uint32_t v = 0; v < V; ++v) {
        int k = C.states[v].count;
        int deg = homologicalGrading(d, v);
        auto& list = C.gens[deg];
        for (uint32_t lab = 0; lab < (1u << k); ++lab)
            list.push_back({v, lab, deg, quantumGrading(d, v, k, lab)});
    }
    C.rebuildLookup();

    std::map<int, std::vector<std::tuple<int, int, int>>> trip;
    for (uint32_t u = 0; u < V; ++u) {
        const auto& su = C.states[u];
        for (int i = 0; i < n; ++i) {
            if (u & (1u << i)) continue;
            uint32_t v = u | (1u << i);
            const auto& sv = C.states[v];
            MergeOrSplit e = edgeData(d, su, sv, i);
            uint32_t base = 0;  // labels on the untouched circles, in v's numbering
            for (uint32_t lab = 0; lab < (1u << su.count); ++lab) {
                base = 0;
                for (int j = 0; j < su.count; ++j)
                    if (e.passThrough[j] >= 0 && (lab >> j & 1)) base |= 1u << e.passThrough[j];
                auto [du, iu] = C.find(u, lab);
                auto emit = [&](uint32_t labV, int exp) {
                    auto [dv, iv] = C.find(v, labV);
                    trip[du].emplace_back(iv, iu, exp);
                };
                if (e.merge) {
                    auto la = static_cast<CircleLabel>(lab >> e.a & 1);
                    auto lb = static_cast<CircleLabel>(lab >> e.b & 1);
                    for (auto [lc, h] : frobeniusMultiply(la, lb))
                        emit(setBit(base, e.c, lc == CircleLabel::Minus), h);
                } else {
                    auto lc = static_cast<CircleLabel>(lab >> e.c & 1);
                    for (auto [pr, h] : frobeniusComultiply(lc)) {
                        uint32_t t = setBit(base, e.a, pr.first == CircleLabel::Minus);
                        t = setBit(t, e.b, pr.second == CircleLabel::Minus);
                        emit(t, h);
                    }
                }
            }
        }
    }
    for (auto& [k, g] : C.gens) {
        if (!C.gens.count(k + 1)) continue;
        MonomialMatrix shape(C.qGradings(k + 1), C.qGradings(k), 0);
        C.diff[k] = MonomialMatrix::fromTriplets(std::move(shape), std::move(trip[k]));
        if (auto bad = C.diff[k].homogeneityViolation())
            throw Error(ErrorKind::NotAComplex, "differential not homogeneous at degree " +
                                                    std::to_string(k));
    }
    if (opt.checkDSquared) {
        if (auto k = dSquaredFailure(C))
            throw Error(ErrorKind::NotAComplex, "d^2 != 0 at degree " + std::to_string(*k));
    }
    return C;
}

std::optional<int> dSquaredFailure(const BNComplex& c) {
    for (const auto& [k, m] : c.diff) {
        auto it = c.diff.find(k + 1);
        if (it == c.diff.end()) continue;
        if (!matMul(it->second, m).empty()) return k;
    }
    return std::nullopt;
}

}  // namespace bnk
