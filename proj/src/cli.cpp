#include "bnk/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace bnk {

using ojson = nlohmann::ordered_json;

KnotResult analyze(const PlanarDiagram& d, bool reduce, int fullCubeCap) {
    KnotResult r;
    r.name = d.name;
    r.crossings = d.crossingCount();
    if (reduce) {
        r.profile = computeHomology(scanReduce(d).complex);
    } else {
        BuildOptions opt;
        opt.fullCubeCap = fullCubeCap;
        r.profile = computeHomology(makeComplex(d, opt));
    }
    r.report = makeReport(r.profile);
    return r;
}

ojson reportJson(const KnotResult& r) {
    ojson j;
    j["schema"] = 1;
    j["name"] = r.name;
    j["crossings"] = r.crossings;
    j["u"] = r.report.u;
    j["s"] = r.report.s ? ojson(*r.report.s) : ojson(nullptr);
    j["collapse_page"] = r.report.collapsePage;
    ojson fr = ojson::array(), tor = ojson::array();
    for (const auto& [hq, cell] : r.report.table) {
        for (int i = 0; i < cell.free; ++i) fr.push_back({{"grh", hq.first}, {"grq", hq.second}});
        for (int o : cell.torsion)
            tor.push_back({{"grh", hq.first}, {"grq", hq.second}, {"order", o}});
    }
    j["free"] = fr;
    j["torsion"] = tor;
    return j;
}

std::string reportText(const KnotResult& r) {
    std::ostringstream os;
    os << "name: " << r.name << "\n";
    os << "crossings: " << r.crossings << "\n";
    os << "u: " << r.report.u << "\n";
    os << "s: " << (r.report.s ? std::to_string(*r.report.s) : "-") << "\n";
    os << "collapse page: " << r.report.collapsePage << "\n";
    os << "free rank: " << r.report.freeRank << "\n";
    os << "torsion summands: " << r.report.totalTorsionCount << "\n";
    for (const auto& [hq, cell] : r.report.table) {
        os << "  (" << hq.first << "," << hq.second << ")";
        if (cell.free) os << " F2[h]^" << cell.free;
        for (int o : cell.torsion) os << " F2[h]/h^" << o;
        os << "\n";
    }
    return os.str();
}

namespace {

std::string csvRow(const KnotResult& r, const std::string& knownU) {
    std::ostringstream os;
    os << r.name << "," << r.crossings << "," << r.report.u << ","
       << (r.report.s ? std::to_string(*r.report.s) : "") << "," << r.report.collapsePage << ","
       << knownU;
    return os.str();
}

const char* kCsvHeader = "name,n,u,s,collapse_page,known_u";

struct Fail {
    std::string where;
};

std::vector<int> pick(int n, int sel) {
    std::vector<int> v;
    if (sel >= 0) {
        if (sel >= n) throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(sel));
        return {sel};
    }
    for (int i = 0; i < n; ++i) v.push_back(i);
    return v;
}

std::vector<std::tuple<int, int, int>> shifted(std::vector<std::tuple<int, int, int>> m, int dh,
                                               int dq) {
    for (auto& [h, q, o] : m) h += dh, q += dq;
    return m;
}

std::string fmtMultiset(const std::vector<std::tuple<int, int, int>>& m) {
    std::ostringstream os;
    for (auto [h, q, o] : m) os << "(" << h << "," << q << "," << o << ")";
    return os.str();
}

void checkDSquared(const ComplexPtr& C) {
    if (auto k = dSquaredFailure(*C)) throw Fail{"d^2 != 0 leaving degree " + std::to_string(*k)};
}

void checkXpSquare(const ComplexPtr& C, int bp) {
    std::vector<int> arcs = bp >= 0 ? std::vector<int>{bp} : C->diagram.arcs;
    for (int a : arcs) {
        ChainMap x = basepointX(C, a);
        if (!x.isZero() && x.bidegrees() != std::vector<std::pair<int, int>>{{0, -2}})
            throw Fail{"x_" + std::to_string(a) + " not of bidegree (0,-2)"};
        if (!mapsEqual(compose(x, x), compose(scalarMap(C, 1), x)))
            throw Fail{"x_p x_p != h x_p at arc " + std::to_string(a)};
    }
}

void checkChangep(const ComplexPtr& C, int sel) {
    for (int c : pick(C->diagram.crossingCount(), sel)) {
        auto W = homotopyWitnessChangep(C, c);
        if (!W.ok) throw Fail{"residual nonzero at crossing " + std::to_string(c)};
    }
}

void checkSaddle(const PlanarDiagram& d, int sel) {
    for (int c : pick(d.crossingCount(), sel)) {
        auto S = saddleMaps(d, c);
        ChainMap rhs = addMaps(addMaps(scalarMap(S.C0, 1), basepointX(S.C0, S.q)),
                               basepointX(S.C0, S.qPrime));
        if (!mapsEqual(compose(S.fbar, S.f), rhs))
            throw Fail{"fbar f != h + x_q + x_q' at crossing " + std::to_string(c)};
    }
}

void checkHopf(const ComplexPtr& C, int bp) {
    const auto& d = C->diagram;
    int p = bp >= 0 ? bp : (d.crossings.empty() ? d.loops.at(0) : d.crossings[0][0]);
    HomologyProfile PK = computeHomology(C);
    for (Handed hd : {Handed::Right, Handed::Left}) {
        std::string tag = hd == Handed::Right ? "right" : "left";
        HopfMaps H = hopfMaps(C, p, hd);
        HomologyProfile PL = computeHomology(H.CL);
        auto expect = hd == Handed::Right ? shifted(PK.multiset(), 0, 1) : shifted(PK.multiset(), -2, -5);
        auto other = hd == Handed::Right ? shifted(PK.multiset(), 2, 5) : shifted(PK.multiset(), 0, -1);
        expect.insert(expect.end(), other.begin(), other.end());
        std::sort(expect.begin(), expect.end());
        if (PL.multiset() != expect)
            throw Fail{tag + ": profile of K#H is " + fmtMultiset(PL.multiset())};
        if (!compose(H.p, H.i).isZero() || !compose(H.r, H.s).isZero())
            throw Fail{tag + ": p i or r s nonzero"};
        ChainMap split = addMaps(compose(H.i, H.r), compose(H.s, H.p));
        if (!inducedOnHomology(split, PL, PL).isIdentity())
            throw Fail{tag + ": i r + s p is not the identity on homology"};
    }
}

void checkCrossingMaps(const ComplexPtr& C, int sel) {
    const auto& d = C->diagram;
    for (int c : pick(d.crossingCount(), sel)) {
        ComplexPtr Cp = d.signs[c] > 0 ? C : makeComplex(switchCrossing(d, c));
        CrossingChange X = crossingChangeMaps(Cp, c);
        HomologyProfile Pp = computeHomology(X.Cplus), Pm = computeHomology(X.Cminus);
        std::string at = " at crossing " + std::to_string(c);
        if (inducedOnHomology(compose(X.fMinus, X.fPlus), Pp, Pp) !=
            inducedOnHomology(scalarMap(X.Cplus, 1), Pp, Pp))
            throw Fail{"f- f+ is not h on H(K+)" + at};
        if (inducedOnHomology(compose(X.fPlus, X.fMinus), Pm, Pm) !=
            inducedOnHomology(scalarMap(X.Cminus, 1), Pm, Pm))
            throw Fail{"f+ f- is not h on H(K-)" + at};
        if (std::abs(uInvariant(Pp) - uInvariant(Pm)) > 1) throw Fail{"|u+ - u-| > 1" + at};
    }
}

void checkReduceOracle(const ComplexPtr& C) {
    auto full = computeHomology(C).multiset();
    auto scan = computeHomology(scanReduce(C->diagram).complex).multiset();
    if (scan != full) throw Fail{"scan " + fmtMultiset(scan) + " vs full " + fmtMultiset(full)};
    auto g = computeHomology(gaussEliminate(C).complex).multiset();
    if (g != full) throw Fail{"gauss " + fmtMultiset(g) + " vs full " + fmtMultiset(full)};
}

void checkInvariance(const ComplexPtr& C, int bp) {
    const auto& d = C->diagram;
    auto base = computeHomology(C).multiset();
    std::vector<int> arcs = bp >= 0 ? std::vector<int>{bp} : std::vector<int>{d.arcs.front()};
    for (int a : arcs)
        for (int kind = 0; kind < 4; ++kind) {
            PlanarDiagram v = addKink(d, a, kind);
            auto m = computeHomology(scanReduce(v).complex).multiset();
            if (m != base)
                throw Fail{"kink " + std::to_string(kind) + " on arc " + std::to_string(a) + ": " +
                           fmtMultiset(m)};
        }
}

}  // namespace

const std::vector<std::string>& propertyNames() {
    static const std::vector<std::string> n = {"dsquared",     "xp-square",     "lemma-changep",
                                               "lemma-saddle", "hopf-split",    "crossing-maps",
                                               "reduce-oracle", "invariance"};
    return n;
}

std::vector<PropertyResult> verifyProperties(const PlanarDiagram& d,
                                             const std::vector<std::string>& props,
                                             const VerifyOptions& opt) {
    std::vector<std::string> names;
    for (const auto& p : props) {
        if (p == "all") {
            names = propertyNames();
            break;
        }
        if (std::find(propertyNames().begin(), propertyNames().end(), p) == propertyNames().end())
            throw Error(ErrorKind::UnknownProperty, p);
        names.push_back(p);
    }
    BuildOptions bo;
    bo.fullCubeCap = opt.fullCubeCap;
    ComplexPtr C = makeComplex(d, bo);
    std::vector<PropertyResult> out;
    for (const auto& n : names) {
        PropertyResult r;
        r.name = n;
        try {
            if (n == "dsquared") checkDSquared(C);
            else if (n == "xp-square") checkXpSquare(C, opt.basepoint);
            else if (n == "lemma-changep") checkChangep(C, opt.crossing);
            else if (n == "lemma-saddle") checkSaddle(d, opt.crossing);
            else if (n == "hopf-split") checkHopf(C, opt.basepoint);
            else if (n == "crossing-maps") checkCrossingMaps(C, opt.crossing);
            else if (n == "reduce-oracle") checkReduceOracle(C);
            else if (n == "invariance") checkInvariance(C, opt.basepoint);
            r.ok = true;
        } catch (const Fail& f) {
            r.detail = f.where;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TooLarge) throw;
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

struct Input {
    std::string pd, table, name;
};

std::vector<TableEntry> loadEntries(const Input& in) {
    if (!in.pd.empty()) {
        TableEntry e;
        e.diagram = parsePd(in.pd);
        if (e.diagram.name.empty()) e.diagram.name = in.name.empty() ? "input" : in.name;
        return {e};
    }
    if (in.table.empty()) throw Error(ErrorKind::ParseError, "need --pd or --table");
    std::ifstream f(in.table);
    if (!f) throw Error(ErrorKind::ParseError, "cannot read " + in.table);
    TableParse t = readTableFile(in.table);
    if (in.name.empty()) return t.entries;
    for (const auto& e : t.entries)
        if (e.diagram.name == in.name) return {e};
    throw Error(ErrorKind::ParseError, "no entry named " + in.name + " in " + in.table);
}

struct Row {
    bool ok = false;
    KnotResult res;
    std::string error;
    std::string knownU;
};

std::vector<Row> runRows(const std::vector<TableEntry>& entries, bool reduce, int cap, int jobs) {
    std::vector<Row> rows(entries.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next++) < entries.size();) {
            auto& row = rows[i];
            auto it = entries[i].attrs.find("u");
            if (it != entries[i].attrs.end()) row.knownU = it->second;
            try {
                row.res = analyze(entries[i].diagram, reduce, cap);
                row.ok = true;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    if (jobs <= 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<int>(jobs, std::max<size_t>(1, entries.size()));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bar-Natan homology over F2[h]: torsion order bound and s-invariant"};
    app.require_subcommand(1);

    Input in;
    std::string format;
    bool noReduce = false;
    int cap = 14;
    std::vector<std::string> props;
    int crossing = -1, basepoint = -1, jobs = 0;
    std::string positional;

    auto addInput = [&](CLI::App* s) {
        s->add_option("--pd", in.pd, "inline PD code");
        s->add_option("--table", in.table, "knot table file");
        s->add_option("--name", in.name, "entry of the table");
        s->add_option("--format", format, "json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_flag("--no-reduce", noReduce, "use the full cube of resolutions");
        s->add_option("--full-cube-cap", cap, "largest crossing count for the full cube")
            ->check(CLI::PositiveNumber);
    };
    CLI::App* compute = app.add_subcommand("compute", "invariants of one diagram");
    addInput(compute);
    compute->add_option("diagram", positional, "PD code");
    CLI::App* batch = app.add_subcommand("batch", "one row per table entry");
    addInput(batch);
    batch->add_option("--jobs", jobs, "worker threads");
    CLI::App* verify = app.add_subcommand("verify", "check chain-level identities");
    addInput(verify);
    verify->add_option("--props", props, "properties or 'all'")->delimiter(',');
    verify->add_option("--crossing", crossing, "crossing index");
    verify->add_option("--basepoint", basepoint, "arc id");
    CLI::App* suCmd = app.add_subcommand("su-table", "compare u with |s|/2");
    addInput(suCmd);
    suCmd->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }
    if (in.pd.empty()) in.pd = positional;

    std::vector<TableEntry> entries;
    try {
        entries = loadEntries(in);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (compute->parsed()) {
        if (entries.size() != 1) {
            err << "error: compute needs exactly one diagram (use --name)\n";
            return 1;
        }
        try {
            KnotResult r = analyze(entries[0].diagram, !noReduce, cap);
            if (format == "csv")
                out << kCsvHeader << "\n" << csvRow(r, entries[0].attrs.count("u") ? entries[0].attrs.at("u") : "") << "\n";
            else if (format == "text")
                out << reportText(r);
            else
                out << reportJson(r).dump() << "\n";
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return e.kind() == ErrorKind::TooLarge ? 2 : 1;
        }
        return 0;
    }

    if (verify->parsed()) {
        if (entries.size() != 1) {
            err << "error: verify needs exactly one diagram (use --name)\n";
            return 1;
        }
        if (props.empty()) props = {"all"};
        std::vector<PropertyResult> res;
        try {
            VerifyOptions vo;
            vo.crossing = crossing;
            vo.basepoint = basepoint;
            vo.fullCubeCap = cap;
            res = verifyProperties(entries[0].diagram, props, vo);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return e.kind() == ErrorKind::TooLarge ? 2 : 1;
        }
        bool all = true;
        if (format == "json") {
            ojson j;
            j["schema"] = 1;
            j["name"] = entries[0].diagram.name;
            ojson arr = ojson::array();
            for (const auto& r : res)
                arr.push_back({{"property", r.name}, {"pass", r.ok}, {"detail", r.detail}});
            j["results"] = arr;
            out << j.dump() << "\n";
        }
        for (const auto& r : res) {
            all = all && r.ok;
            if (format != "json")
                out << r.name << ": " << (r.ok ? "PASS" : "FAIL")
                    << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
        }
        return all ? 0 : 1;
    }

    // batch and su-table
    TableParse parsed;
    if (!in.table.empty() && in.pd.empty() && in.name.empty()) {
        parsed = readTableFile(in.table);
        for (const auto& [line, msg] : parsed.errors)
            err << "warning: " << in.table << ":" << line << ": " << msg << "\n";
    }
    std::vector<Row> rows = runRows(entries, !noReduce, cap, jobs);
    int good = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].ok)
            ++good;
        else
            err << "warning: " << entries[i].diagram.name << ": " << rows[i].error << "\n";
    }

    if (batch->parsed()) {
        if (format == "json") {
            ojson arr = ojson::array();
            for (const auto& r : rows)
                if (r.ok) {
                    ojson j = reportJson(r.res);
                    j["known_u"] = r.knownU.empty() ? ojson(nullptr) : ojson(std::stoi(r.knownU));
                    arr.push_back(j);
                }
            out << arr.dump() << "\n";
        } else if (format == "text") {
            for (const auto& r : rows)
                if (r.ok) out << reportText(r.res) << "\n";
        } else {
            out << kCsvHeader << "\n";
            for (const auto& r : rows)
                if (r.ok) out << csvRow(r.res, r.knownU) << "\n";
        }
        return good > 0 ? 0 : 1;
    }

    struct SuRow {
        std::string name, better;
        int u, halfS;
    };
    std::vector<SuRow> su;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        if (!r.res.report.s) {
            err << "warning: " << r.res.name << ": not a knot, skipped\n";
            continue;
        }
        int h = std::abs(*r.res.report.s) / 2;
        int u = r.res.report.u;
        su.push_back({r.res.name, u > h ? "u" : (u < h ? "s" : "tie"), u, h});
    }
    std::stable_partition(su.begin(), su.end(), [](const SuRow& r) { return r.better == "u"; });
    if (su.empty()) return 1;
    if (format == "json") {
        ojson arr = ojson::array();
        for (const auto& r : su)
            arr.push_back({{"name", r.name}, {"u", r.u}, {"half_s", r.halfS}, {"better", r.better}});
        ojson j;
        j["schema"] = 1;
        j["rows"] = arr;
        out << j.dump() << "\n";
    } else if (format == "text") {
        for (const auto& r : su)
            out << r.name << "  u=" << r.u << "  |s|/2=" << r.halfS << "  better=" << r.better << "\n";
    } else {
        out << "name,u,half_s,better\n";
        for (const auto& r : su) out << r.name << "," << r.u << "," << r.halfS << "," << r.better << "\n";
    }
    return 0;
}

}  // namespace bnk
