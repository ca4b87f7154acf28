#include "bnk/maps.hpp"

#include <algorithm>
#include <sstream>

namespace bnk {

namespace {

using Terms = std::vector<std::pair<uint32_t, int>>;  // (labels, h power)

uint32_t setBit(uint32_t x, int i, bool on) { return on ? (x | (1u << i)) : (x & ~(1u << i)); }
bool bit(uint32_t x, int i) { return (x >> i) & 1u; }

CircleLabel label(uint32_t lab, int j) { return static_cast<CircleLabel>(bit(lab, j)); }

// Edge cobordism of the cube at crossing e.crossing, from the u-side to the v-side.
Terms edgeForward(const MergeOrSplit& e, uint32_t lab) {
    uint32_t base = 0;
    for (int j = 0; j < static_cast<int>(e.passThrough.size()); ++j)
        if (e.passThrough[j] >= 0 && bit(lab, j)) base |= 1u << e.passThrough[j];
    Terms t;
    if (e.merge) {
        for (auto [lc, h] : frobeniusMultiply(label(lab, e.a), label(lab, e.b)))
            t.emplace_back(setBit(base, e.c, lc == CircleLabel::Minus), h);
    } else {
        for (auto [pr, h] : frobeniusComultiply(label(lab, e.c))) {
            uint32_t x = setBit(base, e.a, pr.first == CircleLabel::Minus);
            t.emplace_back(setBit(x, e.b, pr.second == CircleLabel::Minus), h);
        }
    }
    return t;
}

// The reverse saddle, from the v-side back to the u-side.
Terms edgeBackward(const MergeOrSplit& e, uint32_t lab) {
    uint32_t base = 0;
    for (int j = 0; j < static_cast<int>(e.passThrough.size()); ++j)
        if (e.passThrough[j] >= 0 && bit(lab, e.passThrough[j])) base |= 1u << j;
    Terms t;
    if (e.merge) {
        // v-circle c splits back into a, b
        for (auto [pr, h] : frobeniusComultiply(label(lab, e.c))) {
            uint32_t x = setBit(base, e.a, pr.first == CircleLabel::Minus);
            t.emplace_back(setBit(x, e.b, pr.second == CircleLabel::Minus), h);
        }
    } else {
        for (auto [lc, h] : frobeniusMultiply(label(lab, e.a), label(lab, e.b)))
            t.emplace_back(setBit(base, e.c, lc == CircleLabel::Minus), h);
    }
    return t;
}

// x_p on labels where circle j carries the point.
Terms xAction(uint32_t lab, int j) {
    if (bit(lab, j)) return {{lab, 1}};
    return {{lab | (1u << j), 0}};
}

int circleOfArc(const PlanarDiagram& d, const StateCircles& s, int arc) {
    if (!d.hasArc(arc)) throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(arc));
    return s.arcToCircle[d.arcIdx(arc)];
}

// For every circle of (dA, sA) the circle of (dB, sB) holding its smallest arc.
std::vector<int> circleMap(const PlanarDiagram& dA, const StateCircles& sA, const PlanarDiagram& dB,
                           const StateCircles& sB) {
    (void)dA;
    std::vector<int> m(sA.count);
    for (int j = 0; j < sA.count; ++j) {
        int arc = sA.circles[j][0];
        if (!dB.hasArc(arc)) throw Error(ErrorKind::NotASaddlePair, "arc " + std::to_string(arc));
        m[j] = sB.arcToCircle[dB.arcIdx(arc)];
    }
    return m;
}

uint32_t carry(uint32_t lab, const std::vector<int>& m) {
    uint32_t out = 0;
    for (int j = 0; j < static_cast<int>(m.size()); ++j)
        if (bit(lab, j)) out |= 1u << m[j];
    return out;
}

std::vector<int> invert(const std::vector<int>& m, int n) {
    std::vector<int> inv(n, -1);
    for (int j = 0; j < static_cast<int>(m.size()); ++j) {
        if (m[j] < 0 || m[j] >= n || inv[m[j]] >= 0)
            throw Error(ErrorKind::NotASaddlePair, "circle correspondence is not a bijection");
        inv[m[j]] = j;
    }
    return inv;
}

void emit(MapBuilder& b, const BNComplex& S, int k, int i, const BNComplex& T, ResolutionVertex vt,
          const Terms& terms, int extra = 0) {
    for (auto [lab, h] : terms) {
        auto [dt, it] = T.find(vt, lab);
        if (it < 0) throw Error(ErrorKind::IndexOutOfRange, "target generator missing");
        b.add(k, i, dt, it, h + extra);
    }
    (void)S;
}

void requireFull(const BNComplex& c) {
    if (!c.fullCube) throw Error(ErrorKind::VerificationFailed, "map needs a full-cube complex");
}

void requireChain(const ChainMap& f) {
    auto chk = verifyChainMap(f);
    if (!chk.ok) throw Error(ErrorKind::ChainMapLawViolated, f.name + ": " + chk.where);
}

ResolutionVertex insertBit(ResolutionVertex w, int c, int b) {
    ResolutionVertex low = w & ((1u << c) - 1);
    return low | (static_cast<ResolutionVertex>(b) << c) | ((w >> c) << (c + 1));
}

int defaultUnknot(const PlanarDiagram& d, int unknotArc) {
    if (unknotArc >= 0) {
        if (std::find(d.loops.begin(), d.loops.end(), unknotArc) == d.loops.end())
            throw Error(ErrorKind::MissingUnknotComponent,
                        "arc " + std::to_string(unknotArc) + " is not a free circle");
        return unknotArc;
    }
    if (d.loops.empty()) throw Error(ErrorKind::MissingUnknotComponent, "no free circle");
    return *std::max_element(d.loops.begin(), d.loops.end());
}

}  // namespace

ComplexPtr makeComplex(const PlanarDiagram& d, const BuildOptions& opt) {
    return std::make_shared<const BNComplex>(buildComplex(d, opt));
}

ChainMap basepointX(ComplexPtr c, int arc) {
    requireFull(*c);
    if (!c->diagram.hasArc(arc))
        throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(arc));
    MapBuilder b(c, c, "x_" + std::to_string(arc));
    for (const auto& [k, g] : c->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i) {
            int j = circleOfArc(c->diagram, c->states[g[i].vertex], arc);
            emit(b, *c, k, i, *c, g[i].vertex, xAction(g[i].labels, j));
        }
    return b.build();
}

ChainMap mergeMap(ComplexPtr cKU, ComplexPtr cK, int p, int unknotArc) {
    requireFull(*cKU);
    requireFull(*cK);
    int u = defaultUnknot(cKU->diagram, unknotArc);
    if (!cK->diagram.hasArc(p)) throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(p));
    if (cKU->diagram.crossings != cK->diagram.crossings)
        throw Error(ErrorKind::MissingUnknotComponent, "diagrams differ away from the unknot");
    MapBuilder b(cKU, cK, "m_" + std::to_string(p));
    for (const auto& [k, g] : cKU->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i) {
            ResolutionVertex v = g[i].vertex;
            const auto& sU = cKU->states[v];
            const auto& sK = cK->states[v];
            int ju = circleOfArc(cKU->diagram, sU, u);
            int jp = circleOfArc(cKU->diagram, sU, p);
            std::vector<int> m(sU.count, -1);
            for (int j = 0; j < sU.count; ++j)
                if (j != ju) m[j] = sK.arcToCircle[cK->diagram.arcIdx(sU.circles[j][0])];
            uint32_t lab = g[i].labels;
            uint32_t base = carry(lab & ~(1u << ju) & ~(1u << jp), [&] {
                auto mm = m;
                mm[ju] = 0;
                return mm;
            }());
            Terms t;
            for (auto [lc, h] : frobeniusMultiply(label(lab, jp), label(lab, ju)))
                t.emplace_back(setBit(base, m[jp], lc == CircleLabel::Minus), h);
            emit(b, *cKU, k, i, *cK, v, t);
        }
    return b.build();
}

ChainMap splitMap(ComplexPtr cK, ComplexPtr cKU, int p, int unknotArc) {
    requireFull(*cKU);
    requireFull(*cK);
    int u = defaultUnknot(cKU->diagram, unknotArc);
    if (!cK->diagram.hasArc(p)) throw Error(ErrorKind::InvalidBasepoint, "no arc " + std::to_string(p));
    if (cKU->diagram.crossings != cK->diagram.crossings)
        throw Error(ErrorKind::MissingUnknotComponent, "diagrams differ away from the unknot");
    MapBuilder b(cK, cKU, "Delta_" + std::to_string(p));
    for (const auto& [k, g] : cK->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i) {
            ResolutionVertex v = g[i].vertex;
            const auto& sK = cK->states[v];
            const auto& sU = cKU->states[v];
            auto m = circleMap(cK->diagram, sK, cKU->diagram, sU);
            int jp = circleOfArc(cK->diagram, sK, p);
            int ju = circleOfArc(cKU->diagram, sU, u);
            uint32_t lab = g[i].labels;
            uint32_t base = carry(lab & ~(1u << jp), m);
            Terms t;
            for (auto [pr, h] : frobeniusComultiply(label(lab, jp))) {
                uint32_t x = setBit(base, m[jp], pr.first == CircleLabel::Minus);
                t.emplace_back(setBit(x, ju, pr.second == CircleLabel::Minus), h);
            }
            emit(b, *cK, k, i, *cKU, v, t);
        }
    return b.build();
}

SaddleMaps saddleMaps(const PlanarDiagram& K, int c) {
    if (c < 0 || c >= K.crossingCount())
        throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(c));
    SaddleMaps S;
    Smoothed s0 = smoothCrossing(K, c, 0);
    Smoothed s1 = smoothCrossing(K, c, 1);
    S.K0 = s0.diagram;
    S.K1 = s1.diagram;
    const Quad& X = K.crossings[c];
    S.q = s0.arcMap.at(X[0]);
    S.qPrime = s0.arcMap.at(X[2]);
    S.C0 = makeComplex(S.K0);
    S.C1 = makeComplex(S.K1);

    MapBuilder fb(S.C0, S.C1, "f"), gb(S.C1, S.C0, "fbar");
    const ResolutionVertex W = 1u << S.K0.crossingCount();
    for (ResolutionVertex w = 0; w < W; ++w) {
        ResolutionVertex u = insertBit(w, c, 0), v = insertBit(w, c, 1);
        StateCircles su = resolve(K, u), sv = resolve(K, v);
        MergeOrSplit e = edgeData(K, su, sv, c);
        const auto& s0w = S.C0->states[w];
        const auto& s1w = S.C1->states[w];
        auto to0 = circleMap(S.K0, s0w, K, su);  // K0 circle -> K(u) circle
        auto to1 = circleMap(S.K1, s1w, K, sv);
        auto from0 = invert(to0, su.count);
        auto from1 = invert(to1, sv.count);
        for (uint32_t lab = 0; lab < (1u << s0w.count); ++lab) {
            auto [k, i] = S.C0->find(w, lab);
            Terms t;
            for (auto [l, h] : edgeForward(e, carry(lab, to0))) t.emplace_back(carry(l, from1), h);
            emit(fb, *S.C0, k, i, *S.C1, w, t);
        }
        for (uint32_t lab = 0; lab < (1u << s1w.count); ++lab) {
            auto [k, i] = S.C1->find(w, lab);
            Terms t;
            for (auto [l, h] : edgeBackward(e, carry(lab, to1))) t.emplace_back(carry(l, from0), h);
            emit(gb, *S.C1, k, i, *S.C0, w, t);
        }
    }
    S.f = fb.build();
    S.fbar = gb.build();
    requireChain(S.f);
    requireChain(S.fbar);
    return S;
}

CrossingChange crossingChangeMaps(const PlanarDiagram& Kplus, int c, int p, int q) {
    return crossingChangeMaps(makeComplex(Kplus), c, p, q);
}

CrossingChange crossingChangeMaps(ComplexPtr Cplus, int c, int p, int q) {
    requireFull(*Cplus);
    CrossingChange R;
    R.Kplus = Cplus->diagram;
    if (c < 0 || c >= R.Kplus.crossingCount())
        throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(c));
    if (R.Kplus.signs[c] < 0)
        throw Error(ErrorKind::NotPositiveCrossing, "crossing " + std::to_string(c));
    R.c = c;
    R.p = p >= 0 ? p : R.Kplus.crossings[c][0];
    R.q = q >= 0 ? q : R.Kplus.crossings[c][2];
    R.Kminus = switchCrossing(R.Kplus, c);
    R.Cplus = Cplus;
    R.Cminus = makeComplex(R.Kminus);

    const ResolutionVertex cb = 1u << c;
    MapBuilder fp(R.Cplus, R.Cminus, "f+"), fm(R.Cminus, R.Cplus, "f-");
    auto build = [&](MapBuilder& b, const BNComplex& S, const BNComplex& T, int xBit) {
        for (const auto& [k, g] : S.gens)
            for (int i = 0; i < static_cast<int>(g.size()); ++i) {
                ResolutionVertex v = g[i].vertex;
                ResolutionVertex w = v ^ cb;
                uint32_t lab = g[i].labels;
                if (static_cast<int>(bit(v, c)) == xBit) {
                    const auto& st = S.states[v];
                    Terms t = xAction(lab, circleOfArc(S.diagram, st, R.p));
                    Terms t2 = xAction(lab, circleOfArc(S.diagram, st, R.q));
                    t.insert(t.end(), t2.begin(), t2.end());
                    emit(b, S, k, i, T, w, t);
                } else {
                    emit(b, S, k, i, T, w, {{lab, 0}});
                }
            }
    };
    build(fp, *R.Cplus, *R.Cminus, 1);
    build(fm, *R.Cminus, *R.Cplus, 1);
    R.fPlus = fp.build();
    R.fMinus = fm.build();
    requireChain(R.fPlus);
    requireChain(R.fMinus);
    return R;
}

HomotopyWitness homotopyWitnessChangep(ComplexPtr C, int c, int p, int q) {
    requireFull(*C);
    const auto& K = C->diagram;
    if (c < 0 || c >= K.crossingCount())
        throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(c));
    if (p < 0) p = K.crossings[c][0];
    if (q < 0) q = K.crossings[c][2];
    const ResolutionVertex cb = 1u << c;
    MapBuilder hb(C, C, "H");
    for (const auto& [k, g] : C->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i) {
            ResolutionVertex v = g[i].vertex;
            if (!(v & cb)) continue;
            ResolutionVertex u = v ^ cb;
            MergeOrSplit e = edgeData(K, C->states[u], C->states[v], c);
            emit(hb, *C, k, i, *C, u, edgeBackward(e, g[i].labels));
        }
    HomotopyWitness W;
    W.H = hb.build();
    ChainMap d = differentialMap(C);
    ChainMap r = addMaps(compose(d, W.H), compose(W.H, d));
    r = addMaps(r, basepointX(C, p));
    r = addMaps(r, basepointX(C, q));
    r = addMaps(r, scalarMap(C, 1));
    W.residual = r;
    W.ok = r.isZero();
    return W;
}

HopfMaps hopfMaps(const PlanarDiagram& K, int p, Handed handed) {
    return hopfMaps(makeComplex(K), p, handed);
}

HopfMaps hopfMaps(ComplexPtr CK, int p, Handed handed) {
    requireFull(*CK);
    const auto& K = CK->diagram;
    HopfMaps R;
    R.sum = connectHopf(K, p, handed);
    R.CK = CK;
    R.CL = makeComplex(R.sum.diagram);
    const auto& L = R.sum.diagram;
    const int n = K.crossingCount();

    // K circles inside the resolution L_ij, plus the circle carrying no arc of K
    struct Corner {
        std::vector<int> kToL;
        int u = -1;
    };
    auto corner = [&](ResolutionVertex w, int ij) {
        ResolutionVertex V = w | (static_cast<ResolutionVertex>(ij) << n);
        const auto& sL = R.CL->states[V];
        const auto& sK = CK->states[w];
        Corner cr;
        cr.kToL = circleMap(K, sK, L, sL);
        std::vector<char> hit(sL.count, 0);
        for (int x : cr.kToL) {
            if (hit[x]) throw Error(ErrorKind::IdentityCheckFailed, "K circles merge in L");
            hit[x] = 1;
        }
        for (int j = 0; j < sL.count; ++j)
            if (!hit[j]) {
                if (cr.u >= 0) throw Error(ErrorKind::IdentityCheckFailed, "two extra circles");
                cr.u = j;
            }
        return cr;
    };

    MapBuilder ib(CK, R.CL, "i"), sb(CK, R.CL, "s"), pb(R.CL, CK, "p"), rb(R.CL, CK, "r");
    for (const auto& [k, g] : CK->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i) {
            ResolutionVertex w = g[i].vertex;
            uint32_t lab = g[i].labels;
            int jp = circleOfArc(K, CK->states[w], p);
            Corner c11 = corner(w, 3), c00 = corner(w, 0);
            if (c11.u < 0 || c00.u < 0) throw Error(ErrorKind::IdentityCheckFailed, "no unknot");
            ResolutionVertex V11 = w | (3u << n), V00 = w;
            emit(ib, *CK, k, i, *R.CL, V11, {{carry(lab, c11.kToL), 0}});
            Terms t;
            for (auto [l, h] : xAction(lab, jp)) t.emplace_back(carry(l, c00.kToL), h);
            t.emplace_back(carry(lab, c00.kToL) | (1u << c00.u), 0);
            emit(sb, *CK, k, i, *R.CL, V00, t);
        }
    for (const auto& [k, g] : R.CL->gens)
        for (int i = 0; i < static_cast<int>(g.size()); ++i) {
            ResolutionVertex V = g[i].vertex;
            int ij = static_cast<int>(V >> n);
            if (ij != 0 && ij != 3) continue;
            ResolutionVertex w = V & ((1u << n) - 1);
            Corner cr = corner(w, ij);
            auto back = invert(cr.kToL, R.CL->states[V].count);
            uint32_t lab = g[i].labels;
            uint32_t kl = 0;
            for (int j = 0; j < static_cast<int>(cr.kToL.size()); ++j)
                if (bit(lab, cr.kToL[j])) kl |= 1u << j;
            bool uMinus = bit(lab, cr.u);
            if (ij == 0) {
                if (uMinus) emit(pb, *R.CL, k, i, *CK, w, {{kl, 0}});
            } else {
                if (!uMinus) {
                    emit(rb, *R.CL, k, i, *CK, w, {{kl, 0}});
                } else {
                    int jp = circleOfArc(K, CK->states[w], p);
                    Terms t = xAction(kl, jp);
                    t.emplace_back(kl, 1);
                    emit(rb, *R.CL, k, i, *CK, w, t);
                }
            }
            (void)back;
        }
    R.i = ib.build();
    R.s = sb.build();
    R.p = pb.build();
    R.r = rb.build();
    for (const ChainMap* f : {&R.i, &R.s, &R.p, &R.r}) requireChain(*f);
    R.iSum = addMaps(R.i, R.s);
    R.iSum.name = "i+s";
    R.pSum = addMaps(R.p, R.r);
    R.pSum.name = "p+r";
    if (!mapsEqual(compose(R.r, R.i), identityMap(CK)))
        throw Error(ErrorKind::IdentityCheckFailed, "r o i != id");
    if (!mapsEqual(compose(R.p, R.s), identityMap(CK)))
        throw Error(ErrorKind::IdentityCheckFailed, "p o s != id");
    return R;
}

bool HomologyMap::isIdentity() const {
    if (rows != cols) return false;
    Poly one;
    one.addMono(0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (!(entry[r][c] == (r == c ? one : Poly{}))) return false;
    return true;
}

std::string HomologyMap::toString() const {
    std::ostringstream os;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) os << (c ? " " : "") << entry[r][c].toString();
        os << "\n";
    }
    return os.str();
}

HomologyMap inducedOnHomology(const ChainMap& f, const HomologyProfile& src,
                              const HomologyProfile& tgt) {
    if (f.source != src.complex || f.target != tgt.complex)
        throw Error(ErrorKind::DimensionMismatch, "profiles do not belong to the map's complexes");
    HomologyMap H;
    H.rows = static_cast<int>(tgt.summands.size());
    H.cols = static_cast<int>(src.summands.size());
    H.entry.assign(H.rows, std::vector<Poly>(H.cols));
    for (int j = 0; j < H.cols; ++j) {
        const Summand& s = src.summands[j];
        for (const auto& c : f.comps) {
            SparseVec img = f.apply(s.grH, s.witness, c.dH, c.dQ);
            if (img.empty()) continue;
            auto co = tgt.coordinates(s.grH + c.dH, img);
            for (int r = 0; r < H.rows; ++r) H.entry[r][j].add(co[r]);
        }
    }
    return H;
}

}  // namespace bnk
