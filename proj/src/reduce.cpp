#include "bnk/reduce.hpp"

#include <queue>
#include <tuple>
#include <unordered_map>

namespace bnk {

SparseVec ReducedComplex::pushForward(int deg, const SparseVec& v) const {
    if (!transport) throw Error(ErrorKind::VerificationFailed, "no transport recorded");
    return transport->pushForward(deg, v);
}

SparseVec ReducedComplex::pullBack(int deg, const SparseVec& v) const {
    if (!transport) throw Error(ErrorKind::VerificationFailed, "no transport recorded");
    return transport->pullBack(deg, v);
}

ChainMap ReducedComplex::toReduced() const {
    if (!hasTransport()) throw Error(ErrorKind::VerificationFailed, "no model to transport from");
    MapBuilder b(model, complex, "toReduced");
    for (const auto& [k, g] : model->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i)
            for (auto [j, e] : transport->pushForward(k, {{i, 0}})) b.add(k, i, k, j, e);
    return b.build();
}

ChainMap ReducedComplex::fromReduced() const {
    if (!hasTransport()) throw Error(ErrorKind::VerificationFailed, "no model to transport to");
    MapBuilder b(complex, model, "fromReduced");
    for (const auto& [k, g] : complex->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i)
            for (auto [j, e] : transport->pullBack(k, {{i, 0}})) b.add(k, i, k, j, e);
    return b.build();
}

bool hasUnitEntry(const BNComplex& c) {
    for (const auto& [k, m] : c.diff)
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& e : m.col(j))
                if (e.exp == 0) return true;
    return false;
}

namespace {

struct GaussStep {
    int b1, b2, deg;
    std::vector<std::pair<int, int>> gamma;  // out(b1) without b2
    std::vector<std::pair<int, int>> delta;  // in(b2) without b1
};

class GaussTransport : public Transport {
public:
    std::map<int, int> offset;          // model degree -> first global id
    std::map<int, int> modelCount;
    std::vector<GaussStep> steps;
    std::map<int, std::vector<int>> touching;  // degree -> step indices, in order
    std::vector<int> reducedIdx;        // global id -> index in reduced degree, -1 if gone
    std::map<int, std::vector<int>> survivors;  // degree -> global ids

    SparseVec toGlobal(int deg, const SparseVec& v) const {
        SparseVec z;
        auto it = offset.find(deg);
        if (it == offset.end()) {
            if (!v.empty()) throw Error(ErrorKind::IndexOutOfRange, "degree not in model");
            return z;
        }
        for (auto [i, e] : v) {
            if (i < 0 || i >= modelCount.at(deg)) throw Error(ErrorKind::IndexOutOfRange, "gen");
            z.emplace(it->second + i, e);
        }
        return z;
    }

    SparseVec pushForward(int deg, const SparseVec& v) const override {
        SparseVec z = toGlobal(deg, v);
        auto tt = touching.find(deg);
        if (tt != touching.end()) {
            for (int s : tt->second) {
                const auto& st = steps[s];
                if (st.deg == deg) {
                    z.erase(st.b1);
                } else {
                    auto it = z.find(st.b2);
                    if (it == z.end()) continue;
                    int m = it->second;
                    z.erase(it);
                    for (auto [b, e] : st.gamma) addTerm(z, b, m + e);
                }
            }
        }
        SparseVec out;
        for (auto [g, e] : z) out.emplace(reducedIdx[g], e);
        return out;
    }

    SparseVec pullBack(int deg, const SparseVec& v) const override {
        SparseVec z;
        auto sv = survivors.find(deg);
        for (auto [i, e] : v) {
            if (sv == survivors.end() || i < 0 || i >= static_cast<int>(sv->second.size()))
                throw Error(ErrorKind::IndexOutOfRange, "reduced gen");
            z.emplace(sv->second[i], e);
        }
        auto tt = touching.find(deg);
        if (tt != touching.end()) {
            for (auto r = tt->second.rbegin(); r != tt->second.rend(); ++r) {
                const auto& st = steps[*r];
                if (st.deg != deg) continue;
                int parity = 0, exp = 0;
                for (auto [a, e] : st.delta) {
                    auto it = z.find(a);
                    if (it == z.end()) continue;
                    parity ^= 1;
                    exp = it->second + e;
                }
                if (parity) addTerm(z, st.b1, exp);
            }
        }
        SparseVec out;
        int off = offset.count(deg) ? offset.at(deg) : 0;
        for (auto [g, e] : z) out.emplace(g - off, e);
        return out;
    }
};

}  // namespace

ReducedComplex gaussEliminate(std::shared_ptr<const BNComplex> cp, const ReduceOptions& opt) {
    const BNComplex& c = *cp;
    auto tr = std::make_shared<GaussTransport>();
    std::vector<int> degOf, qOf;
    std::vector<const BNGenerator*> genOf;
    for (const auto& [k, g] : c.gens) {
        tr->offset[k] = static_cast<int>(degOf.size());
        tr->modelCount[k] = static_cast<int>(g.size());
        for (const auto& x : g) {
            degOf.push_back(k);
            qOf.push_back(x.grQ);
            genOf.push_back(&x);
        }
    }
    const int N = static_cast<int>(degOf.size());
    std::vector<std::unordered_map<int, int>> out(N), in(N);
    std::vector<char> alive(N, 1);

    using Cand = std::tuple<long long, int, int>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> pq;
    auto cost = [&](int b1, int b2) -> long long {
        if (opt.rule == PivotRule::First) return 0;
        return static_cast<long long>(out[b1].size() - 1) * static_cast<long long>(in[b2].size() - 1);
    };

    for (const auto& [k, m] : c.diff) {
        int src = tr->offset.at(k);
        auto tgtIt = tr->offset.find(k + 1);
        if (tgtIt == tr->offset.end()) continue;
        int tgt = tgtIt->second;
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& e : m.col(j)) {
                out[src + j][tgt + e.row] = e.exp;
                in[tgt + e.row][src + j] = e.exp;
            }
    }
    for (int a = 0; a < N; ++a)
        for (auto [b, e] : out[a])
            if (e == 0) pq.emplace(cost(a, b), a, b);

    auto toggle = [&](int a, int b, int e) {
        auto it = out[a].find(b);
        if (it == out[a].end()) {
            out[a][b] = e;
            in[b][a] = e;
            if (e == 0) pq.emplace(cost(a, b), a, b);
        } else {
            if (it->second != e) throw Error(ErrorKind::NonHomogeneousSum, "elimination");
            out[a].erase(it);
            in[b].erase(a);
        }
    };

    while (!pq.empty()) {
        auto [cst, b1, b2] = pq.top();
        pq.pop();
        if (!alive[b1] || !alive[b2]) continue;
        auto it = out[b1].find(b2);
        if (it == out[b1].end() || it->second != 0) continue;
        long long now = cost(b1, b2);
        if (now > cst) {
            pq.emplace(now, b1, b2);
            continue;
        }
        GaussStep st{b1, b2, degOf[b1], {}, {}};
        for (auto [b, e] : out[b1])
            if (b != b2) st.gamma.emplace_back(b, e);
        for (auto [a, e] : in[b2])
            if (a != b1) st.delta.emplace_back(a, e);
        for (auto [a, ea] : st.delta)
            for (auto [b, eb] : st.gamma) toggle(a, b, ea + eb);
        for (auto [b, e] : out[b1]) in[b].erase(b1);
        for (auto [a, e] : in[b1]) out[a].erase(b1);
        for (auto [b, e] : out[b2]) in[b].erase(b2);
        for (auto [a, e] : in[b2]) out[a].erase(b2);
        out[b1].clear();
        in[b1].clear();
        out[b2].clear();
        in[b2].clear();
        alive[b1] = alive[b2] = 0;
        if (opt.recordTransport) {
            int s = static_cast<int>(tr->steps.size());
            tr->touching[st.deg].push_back(s);
            tr->touching[st.deg + 1].push_back(s);
            tr->steps.push_back(std::move(st));
        }
    }

    auto R = std::make_shared<BNComplex>();
    R->tag = c.tag + "/gauss";
    R->diagram = c.diagram;
    tr->reducedIdx.assign(N, -1);
    for (int g = 0; g < N; ++g) {
        if (!alive[g]) continue;
        auto& list = tr->survivors[degOf[g]];
        tr->reducedIdx[g] = static_cast<int>(list.size());
        list.push_back(g);
        R->gens[degOf[g]].push_back(*genOf[g]);
    }
    for (const auto& [k, list] : tr->survivors) {
        if (!tr->survivors.count(k + 1)) continue;
        std::vector<std::tuple<int, int, int>> trip;
        for (int j = 0; j < static_cast<int>(list.size()); ++j)
            for (auto [b, e] : out[list[j]]) trip.emplace_back(tr->reducedIdx[b], j, e);
        R->diff[k] = MonomialMatrix::fromTriplets(MonomialMatrix(R->qGradings(k + 1), R->qGradings(k), 0),
                                                  std::move(trip));
    }
    ReducedComplex res;
    res.complex = R;
    if (opt.recordTransport) {
        res.model = cp;
        res.transport = tr;
    }
    return res;
}

}  // namespace bnk
