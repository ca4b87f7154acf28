#!/usr/bin/env python3
"""Regenerate the knot tables under data/ from a KnotInfo CSV export.

usage: make_fixtures.py KNOTINFO_CSV OUTDIR

KNOTINFO_CSV is knotinfo_data_complete.csv from the `database_knotinfo`
package ('|' separated).  Writes knots_upto9.txt, knots13.txt and
variants.txt.  Variants are produced from the KnotInfo PD code by
Reidemeister I kinks and Reidemeister II finger moves, then renumbered
along the orientation.
"""
import csv
import random
import re
import sys

csv.field_size_limit(10**9)

TARGET_KNOTS = ["13n_689", "13n_1166", "13n_2504", "13n_2807"]
VARIANT_KNOTS = ["3_1", "4_1", "5_1", "5_2"]


def load(path):
    rows = {}
    with open(path) as fh:
        rd = csv.reader(fh, delimiter="|")
        head = next(rd)
        col = {c: i for i, c in enumerate(head)}
        for r in rd:
            if len(r) < len(head):
                continue
            rows[r[col["name"]]] = {k: r[col[k]] for k in
                                    ("pd_notation", "unknotting_number",
                                     "rasmussen_invariant", "crossing_number")}
    return rows


def parse_pd(s):
    nums = [int(t) for t in re.findall(r"-?\d+", s)]
    return [nums[i:i + 4] for i in range(0, len(nums), 4)]


def fmt(name, pd, extra=""):
    body = ",".join("X(%d,%d,%d,%d)" % tuple(x) for x in pd)
    return ("%s PD[%s]%s" % (name, body, extra)).rstrip()


def heads(pd):
    """For each arc: the (crossing, pos) slot where the arc is incoming."""
    slots = {}
    for ci, x in enumerate(pd):
        for p, a in enumerate(x):
            slots.setdefault(a, []).append((ci, p))
    role = {}
    for ci, x in enumerate(pd):
        role[(ci, 0)] = "in"
        role[(ci, 2)] = "out"
    flip = {"in": "out", "out": "in"}
    changed = True
    while changed:
        changed = False
        for a, sl in slots.items():
            s, t = sl
            if s in role and t not in role:
                role[t] = flip[role[s]]
                changed = True
            elif t in role and s not in role:
                role[s] = flip[role[t]]
                changed = True
        for ci in range(len(pd)):
            s, t = (ci, 1), (ci, 3)
            if s in role and t not in role:
                role[t] = flip[role[s]]
                changed = True
            elif t in role and s not in role:
                role[s] = flip[role[t]]
                changed = True
    head = {}
    for a, sl in slots.items():
        for s in sl:
            if role[s] == "in":
                head[a] = s
    return head


def successor(pd, head):
    nxt = {}
    for a, (ci, p) in head.items():
        x = pd[ci]
        if p == 0:
            nxt[a] = x[2]
        else:
            nxt[a] = x[4 - p]
    return nxt


def renumber(pd):
    head = heads(pd)
    nxt = successor(pd, head)
    start = min(nxt)
    order, a = [], start
    while True:
        order.append(a)
        a = nxt[a]
        if a == start:
            break
    assert len(order) == len(nxt), "not a knot"
    lab = {a: i + 1 for i, a in enumerate(order)}
    return [[lab[a] for a in x] for x in pd]


def add_kink(pd, arc, kind):
    """Reidemeister I on `arc`; kind in 0..3 picks side and sign."""
    head = heads(pd)
    m = max(max(x) for x in pd)
    n1, n2 = m + 1, m + 2
    ci, p = head[arc]
    pd = [list(x) for x in pd]
    pd[ci][p] = n2
    if kind == 0:
        k = [arc, n2, n1, n1]
    elif kind == 1:
        k = [arc, n1, n1, n2]
    elif kind == 2:
        k = [n1, n1, n2, arc]
    else:
        k = [n1, arc, n2, n1]
    return pd + [k]


def faces(pd):
    ends = {}
    for ci, x in enumerate(pd):
        for p, a in enumerate(x):
            ends.setdefault(a, []).append((ci, p))
    seen, out = set(), []
    for a, sl in ends.items():
        for s in sl:
            if (a, s) in seen:
                continue
            face, cur = [], (a, s)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                arc, (ci, p) = cur
                q = (p - 1) % 4
                b = pd[ci][q]
                other = [t for t in ends[b] if t != (ci, q)]
                cur = (b, other[0] if other else (ci, q))
            out.append(face)
    return out


def add_finger(pd, face, i, j):
    """Reidemeister II: push the i-th edge of `face` over the j-th."""
    head = heads(pd)
    x, xs = face[i]
    y, ys = face[j]
    m = max(max(c) for c in pd)
    x1, x2, x3, y1, y2, y3 = x, m + 1, m + 2, y, m + 3, m + 4
    x_agree = head[x] == xs
    y_agree = head[y] == ys
    pd = [list(c) for c in pd]
    hx, hy = head[x], head[y]
    pd[hx[0]][hx[1]] = x3
    pd[hy[0]][hy[1]] = y3
    # local picture: y horizontal, face above it, finger of x dips through y
    if y_agree:
        P1 = {"W": y1, "E": y2}
        P2 = {"W": y2, "E": y3}
    else:
        P2 = {"E": y1, "W": y2}
        P1 = {"E": y2, "W": y3}
    if x_agree:
        P1.update({"S": x2, "N": x3})
        P2.update({"N": x1, "S": x2})
    else:
        P1.update({"N": x1, "S": x2})
        P2.update({"S": x2, "N": x3})

    def cross(P):
        if y_agree:
            return [P["W"], P["S"], P["E"], P["N"]]
        return [P["E"], P["N"], P["W"], P["S"]]
    return pd + [cross(P1), cross(P2)]


def variants(pd, seed):
    rng = random.Random(seed)
    out = []
    arcs = sorted({a for x in pd for a in x})
    v = add_kink(pd, arcs[0], 0)
    v = add_kink(v, max(max(x) for x in v), 3)
    out.append(("R1x2", renumber(v)))
    fs = [f for f in faces(pd) if len({a for a, _ in f}) >= 2]
    f = fs[rng.randrange(len(fs))]
    j = next(k for k in range(1, len(f)) if f[k][0] != f[0][0])
    out.append(("R2", renumber(add_finger(pd, f, 0, j))))
    v = add_kink(pd, arcs[len(arcs) // 2], 1)
    fs = [f for f in faces(v) if len({a for a, _ in f}) >= 2]
    f = fs[rng.randrange(len(fs))]
    j = next(k for k in range(1, len(f)) if f[k][0] != f[0][0])
    v = add_finger(v, f, j, 0)
    v = add_kink(v, arcs[-1], 2)
    out.append(("R1R2", renumber(v)))
    return out


def main():
    src, outdir = sys.argv[1], sys.argv[2]
    rows = load(src)
    hdr = ("# source: KnotInfo (database_knotinfo 2026.10.5, "
           "knotinfo_data_complete.csv)\n")
    with open(outdir + "/knots_upto9.txt", "w") as fh:
        fh.write(hdr)
        fh.write("# columns: name, PD code, unknotting number "
                 "(upper end where KnotInfo gives an interval)\n")
        for name, r in rows.items():
            if not r["crossing_number"].isdigit():
                continue
            n = int(r["crossing_number"])
            if n < 3 or n > 9 or "_" not in name:
                continue
            u = r["unknotting_number"].strip("[]").split(",")[-1]
            fh.write(fmt(name, parse_pd(r["pd_notation"]), " u=" + u) + "\n")
    with open(outdir + "/knots13.txt", "w") as fh:
        fh.write(hdr)
        fh.write("# the four 13-crossing knots with u = 2 and |s|/2 = 1; "
                 "KnotInfo names 13n_689 etc.\n")
        for name in TARGET_KNOTS:
            r = rows[name]
            fh.write(fmt(name.replace("_", ""), parse_pd(r["pd_notation"]),
                         " s=" + r["rasmussen_invariant"]) + "\n")
    with open(outdir + "/variants.txt", "w") as fh:
        fh.write(hdr)
        fh.write("# diagram variants: the KnotInfo PD plus Reidemeister I/II "
                 "modifications (tools/make_fixtures.py)\n")
        for k, name in enumerate(VARIANT_KNOTS):
            pd = parse_pd(rows[name]["pd_notation"])
            fh.write(fmt(name + ":kinfo", pd) + "\n")
            for tag, v in variants(pd, 17 + k):
                fh.write(fmt(name + ":" + tag, v) + "\n")


if __name__ == "__main__":
    main()
