#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bnk/maps.hpp"

using namespace bnk;

static std::vector<TableEntry> corpus() {
    return readTableFile(std::string(BNK_DATA_DIR) + "/knots_upto9.txt").entries;
}

static PlanarDiagram named(const std::string& n) {
    for (const auto& e : corpus())
        if (e.diagram.name == n) return e.diagram;
    throw std::runtime_error("missing " + n);
}

static Poly mono(int e) {
    Poly p;
    p.addMono(e);
    return p;
}

TEST_CASE("basepoint action on the unknot") {
    auto u = parsePd("PD[U]");
    auto c = makeComplex(u);
    auto x = basepointX(c, u.loops[0]);
    CHECK(x.bidegree() == std::pair<int, int>{0, -2});
    auto [d0, plus] = c->find(0, 0);
    auto [d1, minus] = c->find(0, 1);
    CHECK(x.apply(0, {{plus, 0}}, 0, -2) == SparseVec{{minus, 0}});
    CHECK(x.apply(0, {{minus, 0}}, 0, -2) == SparseVec{{minus, 1}});
    CHECK_THROWS_AS(basepointX(c, 5), Error);
}

TEST_CASE("x_p x_p = h x_p") {
    for (const char* n : {"3_1", "4_1", "5_2"}) {
        auto c = makeComplex(named(n));
        for (int a : c->diagram.arcs) {
            auto x = basepointX(c, a);
            CHECK(verifyChainMap(x).ok);
            CHECK(mapsEqual(compose(x, x), compose(scalarMap(c, 1), x)));
        }
    }
}

TEST_CASE("merge and split with a small unknot") {
    for (const char* s : {"PD[U]", "3_1"}) {
        PlanarDiagram K = std::string(s) == "PD[U]" ? parsePd(s) : named(s);
        auto KU = disjointUnion(K);
        auto cK = makeComplex(K), cKU = makeComplex(KU);
        int p = K.arcs.front();
        auto m = mergeMap(cKU, cK, p);
        auto d = splitMap(cK, cKU, p);
        CHECK(verifyChainMap(m).ok);
        CHECK(verifyChainMap(d).ok);
        CHECK(mapsEqual(compose(m, d), scalarMap(cK, 1)));

        // m(x (x) x+) = x; the small unknot is the last circle
        for (const auto& [k, g] : cK->gens)
            for (int i = 0; i < static_cast<int>(g.size()); ++i) {
                auto [dk, j] = cKU->find(g[i].vertex, g[i].labels);
                REQUIRE(dk == k);
                SparseVec img;
                for (const auto& comp : m.comps) {
                    auto part = m.apply(k, {{j, 0}}, comp.dH, comp.dQ);
                    for (auto [a, e] : part) addTerm(img, a, e);
                }
                CHECK(img == SparseVec{{i, 0}});
            }
    }
    auto u = parsePd("PD[U]");
    CHECK_THROWS_AS(mergeMap(makeComplex(u), makeComplex(u), u.loops[0]), Error);
}

TEST_CASE("split of a generator whose p-circle is labelled x-") {
    auto K = named("3_1");
    auto cK = makeComplex(K), cKU = makeComplex(disjointUnion(K));
    int p = K.arcs.front();
    auto d = splitMap(cK, cKU, p);
    const ResolutionVertex v = 0;
    const auto& st = cK->states[v];
    int jp = st.arcToCircle[K.arcIdx(p)];
    uint32_t lab = 1u << jp;
    auto [k, i] = cK->find(v, lab);
    SparseVec img;
    for (const auto& comp : d.comps)
        for (auto [a, e] : d.apply(k, {{i, 0}}, comp.dH, comp.dQ)) addTerm(img, a, e);
    REQUIRE(img.size() == 1);
    const auto& tg = cKU->gens.at(k)[img.begin()->first];
    CHECK(tg.labels == (lab | (1u << st.count)));
    CHECK(img.begin()->second == 0);
}

TEST_CASE("saddle identity") {
    for (const char* n : {"3_1", "4_1", "5_1", "5_2"}) {
        auto K = named(n);
        for (int c = 0; c < K.crossingCount(); ++c) {
            auto S = saddleMaps(K, c);
            auto rhs = addMaps(addMaps(scalarMap(S.C0, 1), basepointX(S.C0, S.q)),
                               basepointX(S.C0, S.qPrime));
            CHECK(mapsEqual(compose(S.fbar, S.f), rhs));
        }
    }
    auto h = parsePd("PD[X(1,3,2,4),X(3,1,4,2)]");
    for (int c = 0; c < 2; ++c) {
        auto S = saddleMaps(h, c);
        auto rhs = addMaps(addMaps(scalarMap(S.C0, 1), basepointX(S.C0, S.q)),
                           basepointX(S.C0, S.qPrime));
        CHECK(mapsEqual(compose(S.fbar, S.f), rhs));
    }
}

TEST_CASE("split then merge on a kink follows the Delta m table") {
    auto u = parsePd("PD[U]");
    for (int kind = 0; kind < 4; ++kind) {
        auto S = saddleMaps(addKink(u, u.loops[0], kind), 0);
        bool twoOnK1 = S.K1.loops.size() == 2;
        auto C = twoOnK1 ? S.C1 : S.C0;
        REQUIRE(C->diagram.loops.size() == 2);
        ChainMap dm = twoOnK1 ? compose(S.f, S.fbar) : compose(S.fbar, S.f);
        std::map<uint32_t, std::map<uint32_t, int>> want;  // labels -> (labels -> exp)
        for (uint32_t lab = 0; lab < 4; ++lab) {
            auto a = static_cast<CircleLabel>(lab & 1), b = static_cast<CircleLabel>(lab >> 1);
            for (auto [x, e] : frobeniusMultiply(a, b))
                for (auto [pr, f] : frobeniusComultiply(x)) {
                    uint32_t t = static_cast<uint32_t>(pr.first) | (static_cast<uint32_t>(pr.second) << 1);
                    auto& cell = want[lab];
                    if (cell.count(t)) cell.erase(t);
                    else cell[t] = e + f;
                }
        }
        for (uint32_t lab = 0; lab < 4; ++lab) {
            auto [k, i] = C->find(0, lab);
            std::map<uint32_t, int> got;
            for (const auto& comp : dm.comps)
                for (auto [j, e] : dm.apply(k, {{i, 0}}, comp.dH, comp.dQ))
                    got[C->gens.at(k)[j].labels] = e;
            CHECK(got == want[lab]);
        }
    }
}

TEST_CASE("homotopy witness for x_p + x_q") {
    for (const char* n : {"3_1", "4_1", "5_2", "6_2"}) {
        auto c = makeComplex(named(n));
        for (int x = 0; x < c->diagram.crossingCount(); ++x) {
            auto W = homotopyWitnessChangep(c, x);
            CHECK(W.ok);
            CHECK(W.residual.isZero());
            CHECK(W.H.bidegree()->first == -1);
        }
    }
}

TEST_CASE("crossing change maps on the trefoil") {
    auto K = named("3_1");
    auto C = makeComplex(K);
    for (int c = 0; c < 3; ++c) {
        REQUIRE(K.signs[c] > 0);
        auto X = crossingChangeMaps(C, c);
        CHECK(mapsEqual(compose(X.fMinus, X.fPlus),
                        addMaps(basepointX(C, X.p), basepointX(C, X.q))));
        auto Pp = computeHomology(X.Cplus), Pm = computeHomology(X.Cminus);
        CHECK(inducedOnHomology(compose(X.fMinus, X.fPlus), Pp, Pp) ==
              inducedOnHomology(scalarMap(X.Cplus, 1), Pp, Pp));
        CHECK(inducedOnHomology(compose(X.fPlus, X.fMinus), Pm, Pm) ==
              inducedOnHomology(scalarMap(X.Cminus, 1), Pm, Pm));
        CHECK(std::abs(uInvariant(Pp) - uInvariant(Pm)) <= 1);
    }
    auto m = makeComplex(mirror(K));
    try {
        crossingChangeMaps(m, 0);
        FAIL("expected NotPositiveCrossing");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPositiveCrossing);
    }
}

TEST_CASE("Hopf maps") {
    auto u = parsePd("PD[U]");
    auto Hu = hopfMaps(u, u.loops[0], Handed::Right);
    CHECK(mapsEqual(compose(Hu.r, Hu.i), identityMap(Hu.CK)));

    auto K = named("3_1");
    for (Handed hd : {Handed::Right, Handed::Left}) {
        auto H = hopfMaps(K, K.crossings[0][0], hd);
        CHECK(mapsEqual(compose(H.p, H.s), identityMap(H.CK)));
        CHECK(mapsEqual(compose(H.r, H.i), identityMap(H.CK)));
        CHECK(compose(H.p, H.i).isZero());
        CHECK(compose(H.r, H.s).isZero());
        CHECK(compose(H.pSum, H.iSum).isZero());
        for (const ChainMap* f : {&H.i, &H.p, &H.r, &H.s, &H.iSum, &H.pSum})
            CHECK(verifyChainMap(*f).ok);

        auto PK = computeHomology(H.CK), PL = computeHomology(H.CL);
        std::vector<std::tuple<int, int, int>> want;
        int ih = hd == Handed::Right ? 2 : 0, iq = hd == Handed::Right ? 5 : -1;
        int ph = hd == Handed::Right ? 0 : -2, pq = hd == Handed::Right ? 1 : -5;
        for (auto [h, q, o] : PK.multiset()) {
            want.emplace_back(h + ih, q + iq, o);
            want.emplace_back(h + ph, q + pq, o);
        }
        std::sort(want.begin(), want.end());
        CHECK(PL.multiset() == want);

        CHECK(inducedOnHomology(compose(H.r, H.i), PK, PK).isIdentity());
        CHECK(inducedOnHomology(compose(H.p, H.s), PK, PK).isIdentity());
        auto split = addMaps(compose(H.i, H.r), compose(H.s, H.p));
        CHECK(inducedOnHomology(split, PL, PL).isIdentity());
    }
    if (true) {
        auto H = hopfMaps(K, K.crossings[0][0], Handed::Right);
        CHECK(H.i.bidegree() == std::pair<int, int>{2, 5});
        CHECK(H.p.bidegree() == std::pair<int, int>{0, -1});
    }
}

TEST_CASE("induced maps") {
    auto c = makeComplex(named("4_1"));
    auto P = computeHomology(c);
    CHECK(inducedOnHomology(identityMap(c), P, P).isIdentity());
    auto h = inducedOnHomology(scalarMap(c, 1), P, P);
    for (int i = 0; i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j) {
            const auto& s = P.summands[i];
            if (i != j || (s.kind == SummandKind::Torsion && s.order == 1))
                CHECK(h.entry[i][j].isZero());
            else
                CHECK(h.entry[i][j] == mono(1));
        }
    auto other = computeHomology(makeComplex(named("3_1")));
    CHECK_THROWS_AS(inducedOnHomology(identityMap(c), P, other), Error);
}

TEST_CASE("induced maps do not depend on the witness") {
    auto c = makeComplex(named("3_1"));
    auto P = computeHomology(c);
    auto x = basepointX(c, c->diagram.arcs.front());
    for (const auto& s : P.summands) {
        auto base = P.coordinates(s.grH, x.apply(s.grH, s.witness, 0, -2));
        const auto& prev = c->gens.count(s.grH - 1) ? c->gens.at(s.grH - 1) : std::vector<BNGenerator>{};
        for (int j = 0; j < static_cast<int>(prev.size()); ++j) {
            int gap = prev[j].grQ - s.grQ;
            if (gap < 0 || gap % 2) continue;
            SparseVec b = applyMatrix(c->differential(s.grH - 1), SparseVec{{j, gap / 2}});
            SparseVec w = s.witness;
            for (auto [a, e] : b) addTerm(w, a, e);
            if (w.empty()) continue;
            CHECK(P.coordinates(s.grH, x.apply(s.grH, w, 0, -2)) == base);
        }
    }
}
