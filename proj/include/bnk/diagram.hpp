#pragma once
// Oriented link diagrams in PD form, complete resolutions and local surgery.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bnk/error.hpp"

namespace bnk {

/// X(a,b,c,d): a is the incoming under-strand, then counterclockwise.
using Quad = std::array<int, 4>;

struct PlanarDiagram {
    std::string name;
    std::vector<Quad> crossings;
    std::vector<int> loops;  // arc ids of crossing-free components
    std::vector<int> signs;  // +1 / -1 per crossing
    int nPlus = 0;
    int nMinus = 0;
    int components = 0;

    // Derived orientation data.  Slots are 4*crossing+position.
    std::vector<int> arcs;           // sorted arc ids
    std::map<int, int> arcIndex;     // arc id -> index into arcs
    std::vector<int> headSlot;       // per arc index, slot where the arc ends (-1 for loops)
    std::vector<int> tailSlot;       // per arc index, slot where the arc starts
    std::vector<int> componentOf;    // per arc index

    int crossingCount() const { return static_cast<int>(crossings.size()); }
    int arcCount() const { return static_cast<int>(arcs.size()); }
    int maxArc() const { return arcs.empty() ? 0 : arcs.back(); }
    bool hasArc(int arc) const { return arcIndex.count(arc) != 0; }
    int arcIdx(int arc) const;
    /// Arc following `arc` along the orientation.
    int nextArc(int arc) const;
    bool isKnot() const { return components == 1; }
};

/// Recompute orientation, signs and component data; throws ValidationError.
void finalizeDiagram(PlanarDiagram& d);

PlanarDiagram makeDiagram(std::vector<Quad> crossings, std::vector<int> loops = {},
                          std::string name = {});

/// `[name ]PD[X(a,b,c,d),...,U,...]`
PlanarDiagram parsePd(const std::string& text);
std::string formatPd(const PlanarDiagram& d);

struct TableEntry {
    PlanarDiagram diagram;
    std::map<std::string, std::string> attrs;  // trailing key=value fields
    int line = 0;
};

struct TableParse {
    std::vector<TableEntry> entries;
    std::vector<std::pair<int, std::string>> errors;  // (line, message)
};

/// One diagram per line, '#' comments, optional `key=value` fields after the PD.
TableParse parseTable(const std::string& text);
TableParse readTableFile(const std::string& path);

/// Bit i of a vertex is the resolution at crossing i.
using ResolutionVertex = uint32_t;

struct StateCircles {
    int count = 0;
    std::vector<int> arcToCircle;              // per arc index
    std::vector<std::vector<int>> circles;     // arc ids, circles ordered by min arc
};

/// Smoothing pairs at crossing c for resolution bit b: 0 -> (a,b)(c,d), 1 -> (a,d)(b,c).
std::array<std::pair<int, int>, 2> smoothingPairs(const Quad& x, int bit);

StateCircles resolve(const PlanarDiagram& d, ResolutionVertex v);

struct MergeOrSplit {
    bool merge = true;
    int crossing = -1;
    // merge: circles a, b of u -> circle c of v; split: circle c of u -> a, b of v
    int a = -1, b = -1, c = -1;
    // for every circle of u not involved: its index in v
    std::vector<int> passThrough;  // per circle of u, -1 for involved ones
};

MergeOrSplit edgeData(const PlanarDiagram& d, ResolutionVertex u, ResolutionVertex v);
MergeOrSplit edgeData(const PlanarDiagram& d, const StateCircles& su, const StateCircles& sv,
                      int crossing);

PlanarDiagram switchCrossing(const PlanarDiagram& d, int c);

enum class Handed { Right, Left };

struct HopfSum {
    PlanarDiagram diagram;
    int c = -1, cPrime = -1;  // indices of the two new crossings
    int basepoint = -1;       // arc of K carrying p (kept on the K side)
    std::vector<int> newArcs; // arcs created by the surgery
};

/// Insert a small circle linking the arc `p` (positive linking for Right).
HopfSum connectHopf(const PlanarDiagram& d, int p, Handed handed);

/// Add a crossing-free circle; its arc id is maxArc+1.
PlanarDiagram disjointUnion(const PlanarDiagram& d, int unknotNear = -1);

struct Smoothed {
    PlanarDiagram diagram;
    std::map<int, int> arcMap;  // arc of the input -> arc of the output
};

/// Remove crossing c using its `bit` smoothing; components are reoriented
/// where necessary (first-entry convention kept) and closed curves without
/// crossings become free loops.
Smoothed smoothCrossing(const PlanarDiagram& d, int c, int bit);

/// Reidemeister I kink on `arc`; kind 0..3 selects sign and side.
PlanarDiagram addKink(const PlanarDiagram& d, int arc, int kind);

/// Mirror image: every crossing switched.
PlanarDiagram mirror(const PlanarDiagram& d);

/// Crossing order for the scan: crossings by first appearance when walking
/// the arcs of each component in orientation order.
std::vector<int> traversalOrder(const PlanarDiagram& d);

/// Greedy order: repeatedly take the crossing sharing most arcs with the
/// current boundary.
std::vector<int> greedyOrder(const PlanarDiagram& d);

}  // namespace bnk
