// Crossing-by-crossing reduction over dotted cobordisms.
//
// Objects are crossingless matchings on the current boundary (boundary points
// are arc ids with exactly one end inside the processed tangle).  A morphism
// between matchings O1, O2 is an F2-set of dot masks over the cycles of
// O1 u O2: each term is a union of disks, one per cycle, some dotted.  The h
// power of a term is fixed by the quantum degrees so it is never stored.

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "bnk/reduce.hpp"

namespace bnk {

namespace {

using Mask = uint64_t;
using Mor = std::vector<Mask>;  // sorted, distinct

void normalizeMor(Mor& m) {
    std::sort(m.begin(), m.end());
    Mor out;
    out.reserve(m.size());
    for (size_t i = 0; i < m.size();) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if ((j - i) & 1) out.push_back(m[i]);
        i = j;
    }
    m.swap(out);
}

void xorInto(Mor& acc, const Mor& add) {
    Mor out;
    out.reserve(acc.size() + add.size());
    std::set_symmetric_difference(acc.begin(), acc.end(), add.begin(), add.end(),
                                  std::back_inserter(out));
    acc.swap(out);
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// Connected pieces of a glued surface, reduced to disks on the output cycles.
struct Components {
    std::vector<Mask> dotsA, dotsB;  // input disks per component
    std::vector<Mask> outC;          // output cycles per component
};

// Expand one pair of input terms.  Appends output masks to `acc`.
void expandTerm(const Components& g, Mask f, Mask h, std::vector<Mask>& acc,
                std::vector<Mask>& scratch) {
    scratch.assign(1, 0);
    for (size_t c = 0; c < g.outC.size(); ++c) {
        int d = __builtin_popcountll(f & g.dotsA[c]) + __builtin_popcountll(h & g.dotsB[c]);
        Mask C = g.outC[c];
        if (C == 0) {
            if (d == 0) return;  // undotted sphere
            continue;
        }
        if (d >= 1) {
            for (auto& x : scratch) x |= C;
            continue;
        }
        // sum over proper subsets of the boundary cycles
        size_t n = scratch.size();
        std::vector<Mask> next;
        for (Mask s = (C - 1) & C;; s = (s - 1) & C) {
            for (size_t i = 0; i < n; ++i) next.push_back(scratch[i] | s);
            if (s == 0) break;
        }
        scratch.swap(next);
    }
    acc.insert(acc.end(), scratch.begin(), scratch.end());
}

struct Cycles {
    int count = 0;
    std::vector<int> of;       // per point
    std::vector<int> firstPt;  // per cycle, its lowest point
};

struct Stage {
    std::vector<int> P;  // boundary arcs, sorted
    std::vector<std::vector<int>> match;
    std::map<std::vector<int>, int> intern;
    std::unordered_map<uint64_t, Cycles> cycCache;
    std::unordered_map<uint64_t, Components> compCache;

    int internMatching(const std::vector<int>& m) {
        auto it = intern.find(m);
        if (it != intern.end()) return it->second;
        int id = static_cast<int>(match.size());
        match.push_back(m);
        intern.emplace(m, id);
        return id;
    }

    const Cycles& cycles(int a, int b) {
        uint64_t key = (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
        auto it = cycCache.find(key);
        if (it != cycCache.end()) return it->second;
        Cycles c;
        const int n = static_cast<int>(P.size());
        c.of.assign(n, -1);
        const auto& ma = match[a];
        const auto& mb = match[b];
        for (int p = 0; p < n; ++p) {
            if (c.of[p] >= 0) continue;
            int id = c.count++;
            c.firstPt.push_back(p);
            int x = p;
            while (true) {
                c.of[x] = id;
                int y = ma[x];
                c.of[y] = id;
                x = mb[y];
                if (x == p) break;
            }
        }
        return cycCache.emplace(key, std::move(c)).first->second;
    }

    // geometry of composing o1 -> o2 -> o3
    const Components& composition(int o1, int o2, int o3) {
        uint64_t key = (static_cast<uint64_t>(o1) << 42) | (static_cast<uint64_t>(o2) << 21) |
                       static_cast<uint64_t>(o3);
        auto it = compCache.find(key);
        if (it != compCache.end()) return it->second;
        const Cycles& A = cycles(o1, o2);
        const Cycles& B = cycles(o2, o3);
        const Cycles& C = cycles(o1, o3);
        UnionFind uf(A.count + B.count);
        for (size_t p = 0; p < P.size(); ++p) uf.unite(A.of[p], A.count + B.of[p]);
        std::map<int, int> compOf;
        Components g;
        auto comp = [&](int piece) {
            int r = uf.find(piece);
            auto [jt, fresh] = compOf.emplace(r, static_cast<int>(compOf.size()));
            if (fresh) {
                g.dotsA.push_back(0);
                g.dotsB.push_back(0);
                g.outC.push_back(0);
            }
            return jt->second;
        };
        for (int a = 0; a < A.count; ++a) g.dotsA[comp(a)] |= Mask(1) << a;
        for (int b = 0; b < B.count; ++b) g.dotsB[comp(A.count + b)] |= Mask(1) << b;
        for (int c = 0; c < C.count; ++c) g.outC[comp(A.of[C.firstPt[c]])] |= Mask(1) << c;
        return compCache.emplace(key, std::move(g)).first->second;
    }

    Mor compose(int o1, int o2, int o3, const Mor& F, const Mor& G) {
        const Components& g = composition(o1, o2, o3);
        Mor acc;
        std::vector<Mask> scratch;
        for (Mask f : F)
            for (Mask h : G) expandTerm(g, f, h, acc, scratch);
        normalizeMor(acc);
        return acc;
    }
};

struct Obj {
    int m;
    int q;
    int h;
};

struct Level {
    Stage st;
    std::vector<Obj> objs;
    std::vector<std::unordered_map<int, Mor>> out;
    std::vector<std::unordered_set<int>> in;
    std::vector<char> alive;

    int add(Obj o) {
        objs.push_back(o);
        out.emplace_back();
        in.emplace_back();
        alive.push_back(1);
        return static_cast<int>(objs.size()) - 1;
    }
    void setEdge(int a, int b, Mor m) {
        if (m.empty()) return;
        out[a][b] = std::move(m);
        in[b].insert(a);
    }
    bool isUnit(int a, int b, const Mor& m) const {
        return objs[a].m == objs[b].m && objs[a].q == objs[b].q && !m.empty();
    }

    void eliminate(ScanStats* stats) {
        using Cand = std::tuple<long long, int, int>;
        std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> pq;
        auto cost = [&](int b1, int b2) {
            return static_cast<long long>(out[b1].size() - 1) *
                   static_cast<long long>(in[b2].size() - 1);
        };
        for (int a = 0; a < static_cast<int>(objs.size()); ++a)
            for (const auto& [b, m] : out[a])
                if (isUnit(a, b, m)) pq.emplace(cost(a, b), a, b);
        while (!pq.empty()) {
            auto [cst, b1, b2] = pq.top();
            pq.pop();
            if (!alive[b1] || !alive[b2]) continue;
            auto it = out[b1].find(b2);
            if (it == out[b1].end() || !isUnit(b1, b2, it->second)) continue;
            long long now = cost(b1, b2);
            if (now > cst) {
                pq.emplace(now, b1, b2);
                continue;
            }
            const int O = objs[b1].m;
            std::vector<std::pair<int, const Mor*>> gamma, delta;
            for (const auto& [b, m] : out[b1])
                if (b != b2) gamma.emplace_back(b, &m);
            for (int a : in[b2])
                if (a != b1) delta.emplace_back(a, &out[a].at(b2));
            std::vector<std::tuple<int, int, Mor>> updates;
            for (auto [a, da] : delta)
                for (auto [b, gb] : gamma) {
                    Mor c = st.compose(objs[a].m, O, objs[b].m, *da, *gb);
                    if (!c.empty()) updates.emplace_back(a, b, std::move(c));
                }
            // detach b1, b2
            for (const auto& [b, m] : out[b1]) in[b].erase(b1);
            for (int a : in[b1]) out[a].erase(b1);
            for (const auto& [b, m] : out[b2]) in[b].erase(b2);
            for (int a : in[b2]) out[a].erase(b2);
            out[b1].clear();
            in[b1].clear();
            out[b2].clear();
            in[b2].clear();
            alive[b1] = alive[b2] = 0;
            for (auto& [a, b, c] : updates) {
                auto jt = out[a].find(b);
                if (jt == out[a].end()) {
                    out[a].emplace(b, std::move(c));
                    in[b].insert(a);
                    jt = out[a].find(b);
                } else {
                    xorInto(jt->second, c);
                    if (jt->second.empty()) {
                        out[a].erase(jt);
                        in[b].erase(a);
                        continue;
                    }
                }
                if (isUnit(a, b, jt->second)) pq.emplace(cost(a, b), a, b);
            }
            if (stats) ++stats->steps;
        }
    }
};

// Result of closing a matching with one smoothed crossing.
struct Glued {
    int M = -1;
    std::vector<int> loopNode;  // first node of each loop
};

struct Transition {
    int nk = 0;                  // |P_k|
    std::array<int, 4> posArc{};
    std::vector<std::pair<int, int>> fixedEdges;  // node pairs joined by an arc
    std::vector<int> boundaryNode;                // per point of P_{k+1}
    std::vector<int> pointOfNode;                 // node -> point of P_{k+1} or -1
    std::map<std::pair<int, int>, Glued> glueCache;
};

}  // namespace

ReducedComplex scanReduce(const PlanarDiagram& d, const ScanOptions& opt) {
    return scanReduce(d, opt, nullptr);
}

ReducedComplex scanReduce(const PlanarDiagram& d, const ScanOptions& opt, ScanStats* stats) {
    std::vector<int> order = opt.order == ScanOrder::Greedy ? greedyOrder(d) : traversalOrder(d);

    auto cur = std::make_unique<Level>();
    cur->st.internMatching({});
    cur->add({0, 0, 0});

    for (int ci : order) {
        const Quad& X = d.crossings[ci];
        Stage& S = cur->st;
        Transition T;
        T.nk = static_cast<int>(S.P.size());
        T.posArc = X;
        std::map<int, int> idxK;
        for (int i = 0; i < T.nk; ++i) idxK[S.P[i]] = i;

        // next boundary
        std::map<int, int> countX;
        for (int a : X) ++countX[a];
        std::vector<int> P2;
        for (int a : S.P)
            if (!countX.count(a)) P2.push_back(a);
        for (auto [a, n] : countX)
            if (n == 1 && !idxK.count(a)) P2.push_back(a);
        std::sort(P2.begin(), P2.end());
        std::map<int, int> idx2;
        for (int i = 0; i < static_cast<int>(P2.size()); ++i) idx2[P2[i]] = i;

        const int nodes = T.nk + 4;
        T.pointOfNode.assign(nodes, -1);
        T.boundaryNode.assign(P2.size(), -1);
        for (int i = 0; i < T.nk; ++i)
            if (idx2.count(S.P[i])) {
                T.boundaryNode[idx2[S.P[i]]] = i;
                T.pointOfNode[i] = idx2[S.P[i]];
            }
        for (int i = 0; i < 4; ++i) {
            int a = X[i];
            if (idxK.count(a)) {
                T.fixedEdges.emplace_back(idxK[a], T.nk + i);
            } else if (countX[a] == 2) {
                for (int j = i + 1; j < 4; ++j)
                    if (X[j] == a) T.fixedEdges.emplace_back(T.nk + i, T.nk + j);
            } else {
                T.boundaryNode[idx2[a]] = T.nk + i;
                T.pointOfNode[T.nk + i] = idx2[a];
            }
        }

        auto next = std::make_unique<Level>();
        Stage& S2 = next->st;
        S2.P = P2;

        auto glue = [&](int o, int s) -> const Glued& {
            auto key = std::make_pair(o, s);
            auto it = T.glueCache.find(key);
            if (it != T.glueCache.end()) return it->second;
            std::vector<std::array<int, 2>> adj(nodes, {-1, -1});
            auto link = [&](int u, int v) {
                (adj[u][0] < 0 ? adj[u][0] : adj[u][1]) = v;
                (adj[v][0] < 0 ? adj[v][0] : adj[v][1]) = u;
            };
            const auto& m = S.match[o];
            for (int i = 0; i < T.nk; ++i)
                if (m[i] > i) link(i, m[i]);
            if (s == 0) {
                link(T.nk + 0, T.nk + 1);
                link(T.nk + 2, T.nk + 3);
            } else {
                link(T.nk + 0, T.nk + 3);
                link(T.nk + 1, T.nk + 2);
            }
            for (auto [u, v] : T.fixedEdges) link(u, v);

            Glued g;
            std::vector<int> partner(P2.size(), -1);
            std::vector<char> seen(nodes, 0);
            for (size_t p = 0; p < P2.size(); ++p) {
                if (partner[p] >= 0) continue;
                int prev = -1, x = T.boundaryNode[p];
                seen[x] = 1;
                while (true) {
                    int nx = adj[x][0] != prev ? adj[x][0] : adj[x][1];
                    prev = x;
                    x = nx;
                    seen[x] = 1;
                    if (T.pointOfNode[x] >= 0) break;
                }
                partner[p] = T.pointOfNode[x];
                partner[T.pointOfNode[x]] = static_cast<int>(p);
            }
            for (int v = 0; v < nodes; ++v) {
                if (seen[v]) continue;
                g.loopNode.push_back(v);
                int prev = -1, x = v;
                while (!seen[x]) {
                    seen[x] = 1;
                    int nx = adj[x][0] != prev ? adj[x][0] : adj[x][1];
                    prev = x;
                    x = nx;
                }
            }
            g.M = S2.internMatching(partner);
            return T.glueCache.emplace(key, std::move(g)).first->second;
        };

        // Glue a morphism F: o1 -> o2 with the crossing piece s1 -> s2 and
        // deloop; returns blocks per (sigma, tau).
        auto glueMorphism = [&](int o1, int s1, int o2, int s2, const Mor& F) {
            const Glued& g1 = glue(o1, s1);
            const Glued& g2 = glue(o2, s2);
            const Cycles& A = S.cycles(o1, o2);
            const int cross = A.count;
            std::array<int, 4> crossPiece{};
            int pieces;
            if (s1 == s2) {
                int pairA = cross, pairB = cross + 1;
                if (s1 == 0) crossPiece = {pairA, pairA, pairB, pairB};
                else crossPiece = {pairA, pairB, pairB, pairA};
                pieces = cross + 2;
            } else {
                crossPiece = {cross, cross, cross, cross};
                pieces = cross + 1;
            }
            auto pieceOf = [&](int node) { return node < T.nk ? A.of[node] : crossPiece[node - T.nk]; };
            UnionFind uf(pieces);
            for (auto [u, v] : T.fixedEdges) uf.unite(pieceOf(u), pieceOf(v));

            const Cycles& C = S2.cycles(g1.M, g2.M);
            const int L1 = static_cast<int>(g1.loopNode.size());
            const int L2 = static_cast<int>(g2.loopNode.size());
            std::map<int, int> compOf;
            Components geo;
            auto comp = [&](int piece) {
                int r = uf.find(piece);
                auto [jt, fresh] = compOf.emplace(r, static_cast<int>(compOf.size()));
                if (fresh) {
                    geo.dotsA.push_back(0);
                    geo.dotsB.push_back(0);
                    geo.outC.push_back(0);
                }
                return jt->second;
            };
            for (int a = 0; a < A.count; ++a) geo.dotsA[comp(a)] |= Mask(1) << a;
            for (int p = A.count; p < pieces; ++p) comp(p);
            for (int c = 0; c < C.count; ++c)
                geo.outC[comp(pieceOf(T.boundaryNode[C.firstPt[c]]))] |= Mask(1) << c;
            for (int l = 0; l < L1; ++l)
                geo.outC[comp(pieceOf(g1.loopNode[l]))] |= Mask(1) << (C.count + l);
            for (int l = 0; l < L2; ++l)
                geo.outC[comp(pieceOf(g2.loopNode[l]))] |= Mask(1) << (C.count + L1 + l);

            Mor terms;
            std::vector<Mask> scratch;
            for (Mask f : F) expandTerm(geo, f, 0, terms, scratch);
            normalizeMor(terms);

            const Mask keep = (Mask(1) << C.count) - 1;
            std::vector<Mor> blocks((1u << L1) * (1u << L2));
            for (Mask t : terms) {
                for (uint32_t sg = 0; sg < (1u << L1); ++sg) {
                    bool ok = true;
                    for (int l = 0; l < L1 && ok; ++l)
                        if (!(sg >> l & 1) && !(t >> (C.count + l) & 1)) ok = false;
                    if (!ok) continue;
                    for (uint32_t ta = 0; ta < (1u << L2); ++ta) {
                        bool ok2 = true;
                        for (int l = 0; l < L2 && ok2; ++l) {
                            bool dotted = t >> (C.count + L1 + l) & 1;
                            if (dotted != static_cast<bool>(ta >> l & 1)) ok2 = false;
                        }
                        if (ok2) blocks[sg * (1u << L2) + ta].push_back(t & keep);
                    }
                }
            }
            for (auto& b : blocks) normalizeMor(b);
            return std::make_tuple(L1, L2, std::move(blocks));
        };

        // new objects
        const int nOld = static_cast<int>(cur->objs.size());
        std::vector<std::array<int, 2>> base(nOld, {-1, -1});
        for (int i = 0; i < nOld; ++i) {
            if (!cur->alive[i]) continue;
            for (int s = 0; s < 2; ++s) {
                const Glued& g = glue(cur->objs[i].m, s);
                int L = static_cast<int>(g.loopNode.size());
                base[i][s] = static_cast<int>(next->objs.size());
                for (uint32_t sg = 0; sg < (1u << L); ++sg) {
                    int q = cur->objs[i].q + s + L - 2 * __builtin_popcount(sg);
                    next->add({g.M, q, cur->objs[i].h + s});
                }
            }
        }
        for (int i = 0; i < nOld; ++i) {
            if (!cur->alive[i]) continue;
            for (const auto& [j, F] : cur->out[i])
                for (int s = 0; s < 2; ++s) {
                    auto [L1, L2, blocks] = glueMorphism(cur->objs[i].m, s, cur->objs[j].m, s, F);
                    for (uint32_t sg = 0; sg < (1u << L1); ++sg)
                        for (uint32_t ta = 0; ta < (1u << L2); ++ta)
                            next->setEdge(base[i][s] + sg, base[j][s] + ta,
                                          std::move(blocks[sg * (1u << L2) + ta]));
                }
            int o = cur->objs[i].m;
            auto [L1, L2, blocks] = glueMorphism(o, 0, o, 1, Mor{0});
            for (uint32_t sg = 0; sg < (1u << L1); ++sg)
                for (uint32_t ta = 0; ta < (1u << L2); ++ta)
                    next->setEdge(base[i][0] + sg, base[i][1] + ta,
                                  std::move(blocks[sg * (1u << L2) + ta]));
        }
        if (stats) stats->maxObjects = std::max(stats->maxObjects, static_cast<int>(next->objs.size()));
        next->eliminate(stats);

        // compact
        auto packed = std::make_unique<Level>();
        packed->st = std::move(next->st);
        packed->st.cycCache.clear();
        packed->st.compCache.clear();
        std::vector<int> newId(next->objs.size(), -1);
        for (size_t i = 0; i < next->objs.size(); ++i)
            if (next->alive[i]) newId[i] = packed->add(next->objs[i]);
        for (size_t i = 0; i < next->objs.size(); ++i) {
            if (!next->alive[i]) continue;
            for (auto& [j, m] : next->out[i]) packed->setEdge(newId[i], newId[j], std::move(m));
        }
        cur = std::move(packed);
    }

    // closed: every object sits on the empty matching
    auto R = std::make_shared<BNComplex>();
    R->tag = (d.name.empty() ? std::string("scan") : d.name) + "/scan";
    R->diagram = d;
    const int U = static_cast<int>(d.loops.size());
    std::vector<int> alive;
    for (int i = 0; i < static_cast<int>(cur->objs.size()); ++i)
        if (cur->alive[i]) alive.push_back(i);
    std::map<int, std::pair<int, int>> where;  // (obj, copy) key -> (deg, idx)
    auto key = [&](int obj, uint32_t copy) { return obj * (1 << U) + static_cast<int>(copy); };
    for (int i : alive)
        for (uint32_t c = 0; c < (1u << U); ++c) {
            const Obj& o = cur->objs[i];
            int deg = o.h - d.nMinus;
            int q = o.q + U - 2 * __builtin_popcount(c) + d.nPlus - 2 * d.nMinus;
            auto& list = R->gens[deg];
            where[key(i, c)] = {deg, static_cast<int>(list.size())};
            list.push_back({0, c, deg, q});
        }
    std::map<int, std::vector<std::tuple<int, int, int>>> trip;
    for (int i : alive)
        for (const auto& [j, m] : cur->out[i]) {
            if (m != Mor{0}) throw Error(ErrorKind::NotAComplex, "closed morphism is not a scalar");
            for (uint32_t c = 0; c < (1u << U); ++c) {
                auto [di, ii] = where[key(i, c)];
                auto [dj, jj] = where[key(j, c)];
                int e = (R->gens[dj][jj].grQ - R->gens[di][ii].grQ) / 2;
                if (e < 0) throw Error(ErrorKind::NotAComplex, "negative h power in scan");
                trip[di].emplace_back(jj, ii, e);
            }
        }
    for (auto& [k, g] : R->gens) {
        if (!R->gens.count(k + 1)) continue;
        R->diff[k] = MonomialMatrix::fromTriplets(
            MonomialMatrix(R->qGradings(k + 1), R->qGradings(k), 0), std::move(trip[k]));
    }
    ReducedComplex res;
    res.complex = R;
    return res;
}

}  // namespace bnk
