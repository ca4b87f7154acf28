#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "bnk/diagram.hpp"

using namespace bnk;

static const char* kHopf = "PD[X(1,3,2,4),X(3,1,4,2)]";
static const char* kTrefoil = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

static std::vector<TableEntry> corpus() {
    return readTableFile(std::string(BNK_DATA_DIR) + "/knots_upto9.txt").entries;
}

TEST_CASE("parse the Hopf link") {
    auto d = parsePd(kHopf);
    CHECK(d.crossingCount() == 2);
    CHECK(d.signs[0] == d.signs[1]);
    CHECK(d.components == 2);
    CHECK(d.nPlus + d.nMinus == 2);
}

TEST_CASE("unknot and validation") {
    auto u = parsePd("PD[U]");
    CHECK(u.crossingCount() == 0);
    CHECK(u.loops.size() == 1);
    CHECK(u.isKnot());
    CHECK_THROWS_AS(parsePd("PD[X(1,4,2,3),X(8,6,1,5),X(6,3,7,2),X(2,7,3,8)]"), Error);
    CHECK_THROWS_AS(parsePd("PD[X(1,2,3)]"), Error);
}

TEST_CASE("formatPd round trip") {
    for (const char* s : {kHopf, kTrefoil, "PD[U]", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3),U]"}) {
        auto d = parsePd(s);
        CHECK(formatPd(d) == s);
        CHECK(formatPd(parsePd(formatPd(d))) == formatPd(d));
    }
    for (const auto& e : corpus()) CHECK(formatPd(parsePd(formatPd(e.diagram))) == formatPd(e.diagram));
}

TEST_CASE("table parsing keeps going past bad lines") {
    auto t = parseTable("# comment\na PD[U] u=0\nb PD[X(1,2,3)]\nc " + std::string(kHopf) + "\n");
    CHECK(t.entries.size() == 2);
    CHECK(t.errors.size() == 1);
    CHECK(t.entries[0].attrs.at("u") == "0");
    CHECK(t.entries[1].diagram.name == "c");
}

TEST_CASE("resolve") {
    auto u = parsePd("PD[U]");
    CHECK(resolve(u, 0).count == 1);
    auto h = parsePd(kHopf);
    CHECK(resolve(h, 0b00).count == 2);
    CHECK(resolve(h, 0b01).count == 1);
    // left-handed trefoil: the all-zero state is the unoriented A-state, three circles
    auto t = parsePd(kTrefoil);
    CHECK(t.nMinus == 3);
    CHECK(resolve(t, 0b000).count == 3);
    CHECK(resolve(t, 0b111).count == 2);
}

TEST_CASE("edgeData") {
    auto h = parsePd(kHopf);
    CHECK(edgeData(h, 0b00, 0b01).merge);
    CHECK_FALSE(edgeData(h, 0b01, 0b11).merge);
    auto t = parsePd(kTrefoil);
    CHECK(edgeData(t, 0b000, 0b001).merge);
    CHECK_THROWS_AS(edgeData(h, 0b00, 0b11), Error);
}

TEST_CASE("every cube edge changes the circle count by one") {
    for (const auto& e : corpus()) {
        const auto& d = e.diagram;
        if (d.crossingCount() > 7) continue;
        const uint32_t N = 1u << d.crossingCount();
        std::vector<int> cnt(N);
        for (uint32_t v = 0; v < N; ++v) cnt[v] = resolve(d, v).count;
        for (uint32_t v = 0; v < N; ++v)
            for (int c = 0; c < d.crossingCount(); ++c)
                if (!(v & (1u << c))) CHECK(std::abs(cnt[v] - cnt[v | (1u << c)]) == 1);
    }
}

TEST_CASE("switchCrossing") {
    for (const auto& e : corpus()) {
        const auto& d = e.diagram;
        for (int c = 0; c < d.crossingCount(); ++c) {
            auto s = switchCrossing(d, c);
            CHECK(formatPd(switchCrossing(s, c)) == formatPd(d));
            CHECK(s.signs[c] == -d.signs[c]);
            CHECK(s.nPlus == d.nPlus - d.signs[c]);
            for (int j = 0; j < d.crossingCount(); ++j)
                if (j != c) CHECK(s.signs[j] == d.signs[j]);
        }
    }
    auto d = parsePd(kTrefoil);
    CHECK_THROWS_AS(switchCrossing(d, 3), Error);
}

TEST_CASE("orientation reversal keeps signs") {
    for (const auto& e : corpus()) {
        std::vector<Quad> rev;
        for (const auto& x : e.diagram.crossings) rev.push_back({x[2], x[3], x[0], x[1]});
        auto r = makeDiagram(rev);
        CHECK(r.signs == e.diagram.signs);
    }
}

TEST_CASE("connectHopf") {
    auto u = parsePd("PD[U]");
    auto hs = connectHopf(u, u.loops[0], Handed::Right);
    CHECK(hs.diagram.crossingCount() == 2);
    CHECK(hs.diagram.components == 2);
    CHECK(hs.diagram.signs == std::vector<int>{1, 1});
    auto hl = connectHopf(u, u.loops[0], Handed::Left);
    CHECK(hl.diagram.signs == std::vector<int>{-1, -1});

    auto t = parsePd(kTrefoil);
    CHECK_THROWS_AS(connectHopf(t, 99, Handed::Right), Error);
    for (int p : t.arcs)
        for (Handed hd : {Handed::Right, Handed::Left}) {
            auto s = connectHopf(t, p, hd);
            const auto& L = s.diagram;
            CHECK(L.crossingCount() == 5);
            CHECK(s.c == 3);
            CHECK(s.cPrime == 4);
            CHECK(L.components == 2);
            for (uint32_t w = 0; w < 8; ++w) {
                int k = resolve(t, w).count;
                CHECK(resolve(L, w | (0b10u << 3)).count == k);
                CHECK(resolve(L, w | (0b01u << 3)).count == k);
                CHECK(resolve(L, w).count == k + 1);
                CHECK(resolve(L, w | (0b11u << 3)).count == k + 1);
            }
        }
}

TEST_CASE("disjointUnion") {
    auto u = parsePd("PD[U]");
    auto uu = disjointUnion(u);
    CHECK(uu.components == 2);
    CHECK(resolve(uu, 0).count == 2);
    auto t = parsePd(kTrefoil);
    auto tu = disjointUnion(t);
    CHECK(tu.crossings == t.crossings);
    CHECK(tu.loops == std::vector<int>{7});
    for (uint32_t v = 0; v < 8; ++v) CHECK(resolve(tu, v).count == resolve(t, v).count + 1);
}

TEST_CASE("smoothCrossing and kinks") {
    auto t = parsePd(kTrefoil);
    for (int c = 0; c < 3; ++c)
        for (int b = 0; b < 2; ++b) {
            auto s = smoothCrossing(t, c, b);
            CHECK(s.diagram.crossingCount() == 2);
            for (uint32_t w = 0; w < 4; ++w) {
                uint32_t low = w & ((1u << c) - 1);
                uint32_t v = low | (b << c) | ((w >> c) << (c + 1));
                CHECK(resolve(s.diagram, w).count == resolve(t, v).count);
            }
        }
    for (int kind = 0; kind < 4; ++kind) {
        auto k = addKink(t, 1, kind);
        CHECK(k.crossingCount() == 4);
        CHECK(k.isKnot());
    }
    auto m = mirror(t);
    CHECK(m.nPlus == 3);
}
