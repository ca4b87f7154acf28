#include "bnk/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace bnk {

namespace {

enum Role : int8_t { Unknown = 0, In = 1, Out = 2 };

Role flip(Role r) { return r == In ? Out : In; }

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

int PlanarDiagram::arcIdx(int arc) const {
    auto it = arcIndex.find(arc);
    if (it == arcIndex.end()) throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(arc));
    return it->second;
}

int PlanarDiagram::nextArc(int arc) const {
    int i = arcIdx(arc);
    int s = headSlot[i];
    if (s < 0) return arc;  // free loop
    int c = s / 4, p = s % 4;
    int q = p == 0 ? 2 : (p == 1 ? 3 : 1);
    return crossings[c][q];
}

void finalizeDiagram(PlanarDiagram& d) {
    const int n = d.crossingCount();
    std::map<int, std::vector<int>> slotsOf;
    for (int c = 0; c < n; ++c)
        for (int p = 0; p < 4; ++p) {
            int a = d.crossings[c][p];
            if (a <= 0) throw Error(ErrorKind::ValidationError, "arc ids must be positive");
            slotsOf[a].push_back(4 * c + p);
        }
    for (auto& [a, s] : slotsOf)
        if (s.size() != 2)
            throw Error(ErrorKind::ValidationError,
                        "arc " + std::to_string(a) + " appears " + std::to_string(s.size()) + " times");
    std::set<int> loopSet;
    for (int a : d.loops) {
        if (a <= 0 || slotsOf.count(a) || !loopSet.insert(a).second)
            throw Error(ErrorKind::ValidationError, "bad free loop id " + std::to_string(a));
    }

    d.arcs.clear();
    for (auto& [a, s] : slotsOf) d.arcs.push_back(a);
    for (int a : d.loops) d.arcs.push_back(a);
    std::sort(d.arcs.begin(), d.arcs.end());
    d.arcIndex.clear();
    for (int i = 0; i < d.arcCount(); ++i) d.arcIndex[d.arcs[i]] = i;

    // Orientation: under strands are given, over strands follow by propagation.
    std::vector<Role> role(4 * n, Unknown);
    for (int c = 0; c < n; ++c) {
        role[4 * c + 0] = In;
        role[4 * c + 2] = Out;
    }
    auto conflict = [](const std::string& what) {
        throw Error(ErrorKind::ValidationError, "inconsistent orientation: " + what);
    };
    auto propagate = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [a, s] : slotsOf) {
                Role r0 = role[s[0]], r1 = role[s[1]];
                if (r0 && r1) {
                    if (r0 == r1) conflict("arc " + std::to_string(a));
                } else if (r0) {
                    role[s[1]] = flip(r0);
                    changed = true;
                } else if (r1) {
                    role[s[0]] = flip(r1);
                    changed = true;
                }
            }
            for (int c = 0; c < n; ++c) {
                Role r1 = role[4 * c + 1], r3 = role[4 * c + 3];
                if (r1 && r3) {
                    if (r1 == r3) conflict("over strand at crossing " + std::to_string(c));
                } else if (r1) {
                    role[4 * c + 3] = flip(r1);
                    changed = true;
                } else if (r3) {
                    role[4 * c + 1] = flip(r3);
                    changed = true;
                }
            }
        }
    };
    propagate();
    for (int c = 0; c < n; ++c) {
        if (role[4 * c + 1]) continue;
        // component passing only over: fall back on consecutive numbering
        int b = d.crossings[c][1], dd = d.crossings[c][3];
        bool bIn;
        if (dd == b + 1)
            bIn = true;
        else if (b == dd + 1)
            bIn = false;
        else
            bIn = b > dd;
        role[4 * c + 1] = bIn ? In : Out;
        role[4 * c + 3] = bIn ? Out : In;
        propagate();
    }

    const int A = d.arcCount();
    d.headSlot.assign(A, -1);
    d.tailSlot.assign(A, -1);
    for (auto& [a, s] : slotsOf) {
        int i = d.arcIndex[a];
        for (int x : s) (role[x] == In ? d.headSlot[i] : d.tailSlot[i]) = x;
    }

    d.signs.assign(n, 0);
    d.nPlus = d.nMinus = 0;
    for (int c = 0; c < n; ++c) {
        d.signs[c] = role[4 * c + 3] == In ? +1 : -1;
        (d.signs[c] > 0 ? d.nPlus : d.nMinus)++;
    }

    d.componentOf.assign(A, -1);
    d.components = 0;
    for (int i = 0; i < A; ++i) {
        if (d.componentOf[i] >= 0) continue;
        int a = d.arcs[i];
        int cur = a;
        do {
            d.componentOf[d.arcIndex[cur]] = d.components;
            cur = d.nextArc(cur);
        } while (cur != a && d.componentOf[d.arcIndex[cur]] < 0);
        if (cur != a) conflict("successor relation is not a union of cycles");
        ++d.components;
    }
}

PlanarDiagram makeDiagram(std::vector<Quad> crossings, std::vector<int> loops, std::string name) {
    PlanarDiagram d;
    d.name = std::move(name);
    d.crossings = std::move(crossings);
    d.loops = std::move(loops);
    finalizeDiagram(d);
    return d;
}

PlanarDiagram parsePd(const std::string& text) {
    auto fail = [&](const std::string& why) -> PlanarDiagram {
        throw Error(ErrorKind::ParseError, why + " in '" + text + "'");
    };
    size_t pos = text.find("PD[");
    if (pos == std::string::npos) return fail("missing PD[");
    std::string name = trim(text.substr(0, pos));
    size_t i = pos + 3;
    auto skip = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto readInt = [&]() -> int {
        skip();
        size_t st = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (st == i) fail("expected integer");
        return std::stoi(text.substr(st, i - st));
    };
    std::vector<Quad> xs;
    int uCount = 0;
    skip();
    if (i < text.size() && text[i] == ']') {
        ++i;
    } else {
        while (true) {
            skip();
            if (i >= text.size()) return fail("unterminated PD");
            if (text[i] == 'U') {
                ++uCount;
                ++i;
            } else if (text[i] == 'X') {
                ++i;
                skip();
                if (i >= text.size() || (text[i] != '(' && text[i] != '[')) return fail("expected (");
                char close = text[i] == '(' ? ')' : ']';
                ++i;
                Quad q{};
                for (int k = 0; k < 4; ++k) {
                    q[k] = readInt();
                    skip();
                    if (k < 3) {
                        if (i >= text.size() || text[i] != ',') return fail("expected ,");
                        ++i;
                    }
                }
                skip();
                if (i >= text.size() || text[i] != close) return fail("expected )");
                ++i;
                xs.push_back(q);
            } else {
                return fail(std::string("unexpected '") + text[i] + "'");
            }
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ']') {
                ++i;
                break;
            }
            return fail("expected , or ]");
        }
    }
    skip();
    if (i != text.size()) return fail("trailing text");
    int mx = 0;
    for (auto& q : xs)
        for (int a : q) mx = std::max(mx, a);
    std::vector<int> loops;
    for (int k = 0; k < uCount; ++k) loops.push_back(mx + 1 + k);
    return makeDiagram(std::move(xs), std::move(loops), name);
}

std::string formatPd(const PlanarDiagram& d) {
    std::ostringstream os;
    if (!d.name.empty()) os << d.name << ' ';
    os << "PD[";
    bool first = true;
    for (const auto& q : d.crossings) {
        os << (first ? "" : ",") << "X(" << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << ')';
        first = false;
    }
    for (size_t k = 0; k < d.loops.size(); ++k) {
        os << (first ? "" : ",") << 'U';
        first = false;
    }
    os << ']';
    return os.str();
}

TableParse parseTable(const std::string& text) {
    TableParse out;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        size_t pos = line.find("PD[");
        size_t close = std::string::npos;
        if (pos != std::string::npos) {
            int depth = 0;
            for (size_t k = pos + 2; k < line.size(); ++k) {
                if (line[k] == '[') ++depth;
                if (line[k] == ']' && --depth == 0) {
                    close = k;
                    break;
                }
            }
        }
        try {
            if (close == std::string::npos) throw Error(ErrorKind::ParseError, "no PD[...] on line");
            TableEntry e;
            e.line = ln;
            e.diagram = parsePd(line.substr(0, close + 1));
            std::istringstream rest(line.substr(close + 1));
            std::string kv;
            while (rest >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "bad field " + kv);
                e.attrs[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            out.entries.push_back(std::move(e));
        } catch (const Error& ex) {
            out.errors.emplace_back(ln, ex.what());
        }
    }
    return out;
}

TableParse readTableFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parseTable(ss.str());
}

std::array<std::pair<int, int>, 2> smoothingPairs(const Quad& x, int bit) {
    if (bit == 0) return {std::make_pair(x[0], x[1]), std::make_pair(x[2], x[3])};
    return {std::make_pair(x[0], x[3]), std::make_pair(x[1], x[2])};
}

StateCircles resolve(const PlanarDiagram& d, ResolutionVertex v) {
    const int A = d.arcCount();
    UnionFind uf(A);
    for (int c = 0; c < d.crossingCount(); ++c)
        for (auto [x, y] : smoothingPairs(d.crossings[c], (v >> c) & 1))
            uf.unite(d.arcIndex.at(x), d.arcIndex.at(y));
    StateCircles s;
    s.arcToCircle.assign(A, -1);
    std::vector<int> rootToCircle(A, -1);
    // arcs are sorted, so the first arc seen of each class is its minimum
    for (int i = 0; i < A; ++i) {
        int r = uf.find(i);
        if (rootToCircle[r] < 0) {
            rootToCircle[r] = s.count++;
            s.circles.emplace_back();
        }
        s.arcToCircle[i] = rootToCircle[r];
        s.circles[rootToCircle[r]].push_back(d.arcs[i]);
    }
    return s;
}

MergeOrSplit edgeData(const PlanarDiagram& d, const StateCircles& su, const StateCircles& sv,
                      int crossing) {
    const Quad& x = d.crossings[crossing];
    std::set<int> cu, cv;
    for (int a : x) {
        cu.insert(su.arcToCircle[d.arcIndex.at(a)]);
        cv.insert(sv.arcToCircle[d.arcIndex.at(a)]);
    }
    MergeOrSplit m;
    m.crossing = crossing;
    if (cu.size() == 2 && cv.size() == 1) {
        m.merge = true;
        m.a = *cu.begin();
        m.b = *cu.rbegin();
        m.c = *cv.begin();
    } else if (cu.size() == 1 && cv.size() == 2) {
        m.merge = false;
        m.c = *cu.begin();
        m.a = *cv.begin();
        m.b = *cv.rbegin();
    } else {
        throw Error(ErrorKind::ValidationError, "edge at crossing " + std::to_string(crossing) +
                                                    " is neither a merge nor a split");
    }
    m.passThrough.assign(su.count, -1);
    for (int j = 0; j < su.count; ++j) {
        if (cu.count(j)) continue;
        m.passThrough[j] = sv.arcToCircle[d.arcIndex.at(su.circles[j][0])];
    }
    return m;
}

MergeOrSplit edgeData(const PlanarDiagram& d, ResolutionVertex u, ResolutionVertex v) {
    ResolutionVertex diff = u ^ v;
    if (diff == 0 || (diff & (diff - 1)) || (u & diff))
        throw Error(ErrorKind::NotAnEdge, "vertices do not form an edge u < v");
    int c = __builtin_ctz(diff);
    if (c >= d.crossingCount()) throw Error(ErrorKind::NotAnEdge, "bit outside diagram");
    return edgeData(d, resolve(d, u), resolve(d, v), c);
}

PlanarDiagram switchCrossing(const PlanarDiagram& d, int c) {
    if (c < 0 || c >= d.crossingCount())
        throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(c));
    PlanarDiagram e = d;
    const Quad x = d.crossings[c];
    if (d.signs[c] > 0)
        e.crossings[c] = {x[3], x[0], x[1], x[2]};
    else
        e.crossings[c] = {x[1], x[2], x[3], x[0]};
    finalizeDiagram(e);
    return e;
}

HopfSum connectHopf(const PlanarDiagram& d, int p, Handed handed) {
    if (!d.hasArc(p)) throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(p));
    const int N = d.maxArc();
    const int m = N + 1, u1 = N + 3, u2 = N + 4;
    int o = N + 2;
    PlanarDiagram e = d;
    auto lit = std::find(e.loops.begin(), e.loops.end(), p);
    std::vector<int> created;
    if (lit != e.loops.end()) {
        e.loops.erase(lit);
        o = p;
        created = {m, u1, u2};
    } else {
        int s = d.headSlot[d.arcIdx(p)];
        e.crossings[s / 4][s % 4] = o;
        created = {m, o, u1, u2};
    }
    const int c = d.crossingCount();
    e.crossings.push_back({p, u1, m, u2});
    e.crossings.push_back({u1, o, u2, m});
    finalizeDiagram(e);
    if (handed == Handed::Left) {
        e = switchCrossing(e, c);
        e = switchCrossing(e, c + 1);
    }
    HopfSum h;
    h.diagram = std::move(e);
    h.c = c;
    h.cPrime = c + 1;
    h.basepoint = p;
    h.newArcs = created;
    return h;
}

PlanarDiagram disjointUnion(const PlanarDiagram& d, int unknotNear) {
    if (unknotNear >= 0 && !d.hasArc(unknotNear))
        throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(unknotNear));
    PlanarDiagram e = d;
    e.loops.push_back(d.maxArc() + 1);
    finalizeDiagram(e);
    return e;
}

Smoothed smoothCrossing(const PlanarDiagram& d, int c, int bit) {
    if (c < 0 || c >= d.crossingCount())
        throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(c));
    const int A = d.arcCount();
    UnionFind uf(A);
    for (auto [x, y] : smoothingPairs(d.crossings[c], bit)) uf.unite(d.arcIdx(x), d.arcIdx(y));
    Smoothed out;
    for (int i = 0; i < A; ++i) out.arcMap[d.arcs[i]] = d.arcs[uf.find(i)];

    std::vector<Quad> xs;
    std::vector<int> oldIndex;
    for (int k = 0; k < d.crossingCount(); ++k) {
        if (k == c) continue;
        Quad q = d.crossings[k];
        for (int& a : q) a = out.arcMap[a];
        xs.push_back(q);
        oldIndex.push_back(k);
    }
    const int n = static_cast<int>(xs.size());
    std::map<int, std::vector<int>> slotsOf;
    for (int k = 0; k < n; ++k)
        for (int p = 0; p < 4; ++p) slotsOf[xs[k][p]].push_back(4 * k + p);

    std::vector<int> loops = d.loops;
    std::set<int> seen;
    for (int i = 0; i < A; ++i) {
        int r = out.arcMap[d.arcs[i]];
        if (!slotsOf.count(r) && std::find(d.loops.begin(), d.loops.end(), d.arcs[i]) == d.loops.end() &&
            seen.insert(r).second)
            loops.push_back(r);
    }

    // orient each component, preferring the old direction of its smallest arc
    std::vector<Role> role(4 * n, Unknown);
    for (auto& [r, s] : slotsOf) {
        if (role[s[0]]) continue;
        int start = -1;  // slot where arc r is incoming
        int oldHead = d.headSlot[d.arcIdx(r)], oldTail = d.tailSlot[d.arcIdx(r)];
        for (int x : s) {
            int k = x / 4, p = x % 4;
            int slotOld = 4 * oldIndex[k] + p;
            if (slotOld == oldHead) start = x;
        }
        if (start < 0) {
            for (int x : s) {
                int slotOld = 4 * oldIndex[x / 4] + x % 4;
                if (slotOld == oldTail) start = (x == s[0]) ? s[1] : s[0];
            }
        }
        if (start < 0) start = s[1];
        int cur = start;
        while (!role[cur]) {
            role[cur] = In;
            int k = cur / 4, p = cur % 4;
            int outSlot = 4 * k + (p + 2) % 4;
            role[outSlot] = Out;
            int a = xs[k][(p + 2) % 4];
            const auto& sl = slotsOf[a];
            cur = sl[0] == outSlot ? sl[1] : sl[0];
        }
    }
    for (int k = 0; k < n; ++k)
        if (role[4 * k] == Out) {
            Quad q = xs[k];
            xs[k] = {q[2], q[3], q[0], q[1]};
        }
    out.diagram = makeDiagram(std::move(xs), std::move(loops), d.name);
    return out;
}

PlanarDiagram addKink(const PlanarDiagram& d, int arc, int kind) {
    if (!d.hasArc(arc)) throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(arc));
    PlanarDiagram e = d;
    const int N = d.maxArc();
    int n1 = N + 1, n2 = N + 2;
    auto lit = std::find(e.loops.begin(), e.loops.end(), arc);
    if (lit != e.loops.end()) {
        e.loops.erase(lit);
        n2 = arc;
    } else {
        int s = d.headSlot[d.arcIdx(arc)];
        e.crossings[s / 4][s % 4] = n2;
    }
    switch (kind & 3) {
    case 0: e.crossings.push_back({arc, n2, n1, n1}); break;
    case 1: e.crossings.push_back({arc, n1, n1, n2}); break;
    case 2: e.crossings.push_back({n1, n1, n2, arc}); break;
    default: e.crossings.push_back({n1, arc, n2, n1}); break;
    }
    finalizeDiagram(e);
    return e;
}

PlanarDiagram mirror(const PlanarDiagram& d) {
    PlanarDiagram e = d;
    for (int c = 0; c < d.crossingCount(); ++c) e = switchCrossing(e, c);
    return e;
}

std::vector<int> traversalOrder(const PlanarDiagram& d) {
    std::vector<int> order;
    std::vector<char> used(d.crossingCount(), 0);
    std::vector<char> seenComp(d.components, 0);
    for (int i = 0; i < d.arcCount(); ++i) {
        if (seenComp[d.componentOf[i]]) continue;
        seenComp[d.componentOf[i]] = 1;
        int a = d.arcs[i], cur = a;
        do {
            int s = d.headSlot[d.arcIdx(cur)];
            if (s >= 0 && !used[s / 4]) {
                used[s / 4] = 1;
                order.push_back(s / 4);
            }
            cur = d.nextArc(cur);
        } while (cur != a);
    }
    for (int c = 0; c < d.crossingCount(); ++c)
        if (!used[c]) order.push_back(c);
    return order;
}

std::vector<int> greedyOrder(const PlanarDiagram& d) {
    const int n = d.crossingCount();
    std::vector<int> order;
    std::vector<char> used(n, 0);
    std::map<int, int> boundary;  // arc -> open ends
    auto sizeAfter = [&](int c) {
        int delta = 0;
        std::map<int, int> local;
        for (int a : d.crossings[c]) local[a]++;
        for (auto [a, k] : local) {
            int have = boundary.count(a) ? boundary.at(a) : 0;
            int total = have + k;
            delta += (total == 1 ? 1 : 0) - (have == 1 ? 1 : 0);
        }
        return delta;
    };
    for (int step = 0; step < n; ++step) {
        int best = -1, bestScore = 0;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            int sc = sizeAfter(c);
            if (best < 0 || sc < bestScore) {
                best = c;
                bestScore = sc;
            }
        }
        used[best] = 1;
        order.push_back(best);
        for (int a : d.crossings[best]) boundary[a]++;
    }
    return order;
}

}  // namespace bnk
