#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bnk/chainmap.hpp"

using namespace bnk;
using L = CircleLabel;

static std::vector<TableEntry> corpus() {
    return readTableFile(std::string(BNK_DATA_DIR) + "/knots_upto9.txt").entries;
}

TEST_CASE("frobenius algebra") {
    using M = std::vector<std::pair<L, int>>;
    CHECK(frobeniusMultiply(L::Plus, L::Plus) == M{{L::Plus, 0}});
    CHECK(frobeniusMultiply(L::Minus, L::Plus) == M{{L::Minus, 0}});
    CHECK(frobeniusMultiply(L::Plus, L::Minus) == M{{L::Minus, 0}});
    CHECK(frobeniusMultiply(L::Minus, L::Minus) == M{{L::Minus, 1}});

    using D = std::vector<std::pair<std::pair<L, L>, int>>;
    auto dp = frobeniusComultiply(L::Plus);
    std::sort(dp.begin(), dp.end());
    D want{{{L::Plus, L::Minus}, 0}, {{L::Minus, L::Plus}, 0}, {{L::Plus, L::Plus}, 1}};
    std::sort(want.begin(), want.end());
    CHECK(dp == want);
    CHECK(frobeniusComultiply(L::Minus) == D{{{L::Minus, L::Minus}, 0}});

    // m(Delta(x+)) = h x+
    std::map<std::pair<L, int>, int> acc;
    for (auto [pr, e] : frobeniusComultiply(L::Plus))
        for (auto [l, f] : frobeniusMultiply(pr.first, pr.second)) acc[{l, e + f}] ^= 1;
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    CHECK(acc.size() == 1);
    CHECK(acc.begin()->first == std::pair<L, int>{L::Plus, 1});
}

TEST_CASE("unknot complex") {
    auto c = buildComplex(parsePd("PD[U]"));
    CHECK(c.size() == 2);
    CHECK(c.count(0) == 2);
    auto q = c.qGradings(0);
    std::sort(q.begin(), q.end());
    CHECK(q == std::vector<int>{-1, 1});
    CHECK(c.differential(0).empty());
}

TEST_CASE("Hopf link complex") {
    auto c = buildComplex(parsePd("PD[X(1,3,2,4),X(3,1,4,2)]"));
    CHECK(c.size() == 12);
    CHECK(c.count(0) == 4);
    CHECK(c.count(1) == 4);
    CHECK(c.count(2) == 4);
    CHECK_FALSE(dSquaredFailure(c));
}

TEST_CASE("positive kink") {
    auto u = parsePd("PD[U]");
    bool seen = false;
    for (int kind = 0; kind < 4; ++kind) {
        auto k = addKink(u, u.loops[0], kind);
        if (k.signs[0] < 0) continue;
        seen = true;
        auto c = buildComplex(k);
        CHECK(c.gens.begin()->first == 0);
        CHECK(c.gens.rbegin()->first == 1);
        auto [deg, idx] = c.find(0, 0);
        CHECK(deg == 0);
        CHECK(c.gens.at(0)[idx].grQ == 3);
    }
    CHECK(seen);
}

TEST_CASE("gradings follow the formulas") {
    auto d = parsePd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]");
    auto c = buildComplex(d);
    for (const auto& [k, g] : c.gens)
        for (const auto& x : g) {
            int v = std::popcount(x.vertex);
            int kc = c.states[x.vertex].count;
            int minus = std::popcount(x.labels);
            CHECK(x.grH == v - d.nMinus);
            CHECK(x.grQ == d.nPlus - 2 * d.nMinus + v + (kc - minus) - minus);
            CHECK(k == x.grH);
        }
}

TEST_CASE("d^2 = 0 and homogeneous differentials on the corpus") {
    for (const auto& e : corpus()) {
        if (e.diagram.crossingCount() > 8) continue;
        auto c = buildComplex(e.diagram);
        CHECK_MESSAGE(!dSquaredFailure(c), e.diagram.name);
        for (const auto& [k, m] : c.diff) CHECK_FALSE(m.homogeneityViolation());
    }
}

TEST_CASE("full cube cap") {
    auto t = readTableFile(std::string(BNK_DATA_DIR) + "/knots13.txt").entries;
    BuildOptions o;
    o.fullCubeCap = 12;
    try {
        buildComplex(t.at(0).diagram, o);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("chain map checks") {
    auto c = std::make_shared<const BNComplex>(
        buildComplex(parsePd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")));
    CHECK(verifyChainMap(identityMap(c)).ok);
    CHECK(verifyChainMap(scalarMap(c, 2)).ok);
    CHECK(verifyChainMap(differentialMap(c)).ok);
    CHECK(compose(differentialMap(c), differentialMap(c)).isZero());
    CHECK(addMaps(identityMap(c), identityMap(c)).isZero());
    CHECK(identityMap(c).bidegree() == std::pair<int, int>{0, 0});
    CHECK(scalarMap(c, 1).bidegree() == std::pair<int, int>{0, -2});

    // negative control: drop one entry of the identity
    ChainMap bad = identityMap(c);
    auto& blk = bad.comps.at(0).blocks.begin()->second;
    auto t = blk.triplets();
    blk.toggle(std::get<0>(t[0]), std::get<1>(t[0]), std::get<2>(t[0]));
    auto chk = verifyChainMap(bad);
    CHECK_FALSE(chk.ok);
    CHECK_FALSE(chk.where.empty());
}
