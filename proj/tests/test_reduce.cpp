#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bnk/homology.hpp"

using namespace bnk;

static std::vector<TableEntry> corpus() {
    return readTableFile(std::string(BNK_DATA_DIR) + "/knots_upto9.txt").entries;
}

static std::shared_ptr<const BNComplex> full(const PlanarDiagram& d) {
    return std::make_shared<const BNComplex>(buildComplex(d));
}

TEST_CASE("an acyclic pair is eliminated") {
    auto c = std::make_shared<BNComplex>();
    c->gens[0] = {BNGenerator{0, 0, 0, 1}};
    c->gens[1] = {BNGenerator{1, 0, 1, 1}};
    MonomialMatrix m({1}, {1});
    m.toggle(0, 0, 0);
    c->diff[0] = m;
    auto r = gaussEliminate(c);
    CHECK(r.complex->size() == 0);
}

TEST_CASE("a non-unit pair survives") {
    auto c = std::make_shared<BNComplex>();
    c->gens[0] = {BNGenerator{0, 0, 0, 1}};
    c->gens[1] = {BNGenerator{1, 0, 1, 3}};
    MonomialMatrix m({3}, {1});
    m.toggle(0, 0, 1);
    c->diff[0] = m;
    auto r = gaussEliminate(c);
    CHECK(r.complex->size() == 2);
}

TEST_CASE("unknot is a fixed point") {
    auto c = full(parsePd("PD[U]"));
    auto r = gaussEliminate(c);
    CHECK(r.complex->size() == 2);
    auto s = scanReduce(parsePd("PD[U]"));
    CHECK(s.complex->size() == 2);
}

TEST_CASE("gauss elimination keeps homology and its transport is a chain equivalence") {
    for (const auto& e : corpus()) {
        if (e.diagram.crossingCount() > 6) continue;
        auto c = full(e.diagram);
        auto r = gaussEliminate(c);
        CHECK_FALSE(hasUnitEntry(*r.complex));
        CHECK_FALSE(dSquaredFailure(*r.complex));
        CHECK(computeHomology(r.complex).multiset() == computeHomology(c).multiset());
        REQUIRE(r.hasTransport());
        ChainMap to = r.toReduced(), from = r.fromReduced();
        CHECK(verifyChainMap(to).ok);
        CHECK(verifyChainMap(from).ok);
        CHECK(mapsEqual(compose(to, from), identityMap(r.complex)));
    }
}

TEST_CASE("pivot rules agree") {
    auto c = full(corpus().at(3).diagram);
    ReduceOptions o;
    o.rule = PivotRule::First;
    CHECK(computeHomology(gaussEliminate(c, o).complex).multiset() ==
          computeHomology(gaussEliminate(c).complex).multiset());
}

TEST_CASE("scan matches the full cube up to 8 crossings") {
    for (const auto& e : corpus()) {
        if (e.diagram.crossingCount() > 8) continue;
        auto s = scanReduce(e.diagram);
        CHECK_FALSE(dSquaredFailure(*s.complex));
        CHECK_FALSE(s.hasTransport());
        CHECK_MESSAGE(computeHomology(s.complex).multiset() ==
                          computeHomology(full(e.diagram)).multiset(),
                      e.diagram.name);
    }
}

TEST_CASE("scan orders agree") {
    for (const auto& e : corpus()) {
        if (e.diagram.crossingCount() > 7) continue;
        ScanOptions g;
        g.order = ScanOrder::Greedy;
        CHECK(computeHomology(scanReduce(e.diagram, g).complex).multiset() ==
              computeHomology(scanReduce(e.diagram).complex).multiset());
    }
}

TEST_CASE("unknot with three kinks reduces to two generators") {
    auto d = parsePd("PD[U]");
    d = addKink(d, d.loops[0], 0);
    d = addKink(d, d.arcs.front(), 1);
    d = addKink(d, d.arcs.back(), 2);
    REQUIRE(d.crossingCount() == 3);
    auto s = scanReduce(d);
    CHECK(s.complex->size() == 2);
    for (const auto& [k, m] : s.complex->diff) CHECK(m.empty());
}

TEST_CASE("13-crossing knots stay small") {
    for (const auto& e : readTableFile(std::string(BNK_DATA_DIR) + "/knots13.txt").entries) {
        ScanStats st;
        auto s = scanReduce(e.diagram, {}, &st);
        CHECK(st.maxObjects < (1 << 13));
        CHECK(s.complex->size() < (1 << 13));
    }
}
