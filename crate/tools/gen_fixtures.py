#!/usr/bin/env python3
"""Regenerate the bundled PD-code fixtures in crates/core/fixtures/.

Links are built as closed polylines in R^3.  Bing and Whitehead doubles are
satellites: a pattern curve in the solid torus (t, u, v) is mapped into a thin
tube around a companion component using a 0-framing of that component.  The
link is then projected onto a generic plane and the PD code is read off.

PD convention: [a, b, c, d] lists edges counterclockwise starting at the
incoming under-edge a, under-strand runs a -> c.  A crossing is positive when
the over-strand runs d -> b.

Usage: python3 tools/gen_fixtures.py [output_dir]
"""

import json
import math
import os
import sys

import numpy as np


# ---------------------------------------------------------------------------
# geometry helpers


def circle(center, radius, e1, e2, n=240):
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    c = np.asarray(center, float)
    return c + radius * (np.outer(np.cos(t), e1) + np.outer(np.sin(t), e2))


def rotation(a, b, c):
    ca, sa = math.cos(a), math.sin(a)
    cb, sb = math.cos(b), math.sin(b)
    cc, sc = math.cos(c), math.sin(c)
    rx = np.array([[1, 0, 0], [0, ca, -sa], [0, sa, ca]])
    ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
    rz = np.array([[cc, -sc, 0], [sc, cc, 0], [0, 0, 1]])
    return rz @ ry @ rx


def segments(curve):
    return curve, np.roll(curve, -1, axis=0)


def find_crossings(p, q, same):
    """All transverse crossings between the xy-projections of closed polylines
    p and q.  Returns tuples (i, s, j, t) with p[i] + s (p[i+1]-p[i]) meeting
    q[j] + t (q[j+1]-q[j])."""
    p0, p1 = segments(p)
    q0, q1 = segments(q)
    out = []
    n, m = len(p), len(q)
    chunk = 256
    dq = (q1 - q0)[:, :2]
    for start in range(0, n, chunk):
        a0 = p0[start:start + chunk, :2][:, None, :]
        da = (p1 - p0)[start:start + chunk, :2][:, None, :]
        b0 = q0[None, :, :2]
        db = dq[None, :, :]
        den = da[..., 0] * db[..., 1] - da[..., 1] * db[..., 0]
        w = b0 - a0
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (w[..., 0] * db[..., 1] - w[..., 1] * db[..., 0]) / den
            t = (w[..., 0] * da[..., 1] - w[..., 1] * da[..., 0]) / den
        hit = (np.abs(den) > 1e-15) & (s > 0) & (s < 1) & (t > 0) & (t < 1)
        ii, jj = np.nonzero(hit)
        for i, j in zip(ii, jj):
            gi = start + i
            if same:
                if gi >= j:
                    continue
                if j - gi <= 1 or (gi == 0 and j == n - 1):
                    continue
            out.append((gi, float(s[i, j]), int(j), float(t[i, j])))
    return out


def point_on(curve, i, s):
    a = curve[i]
    b = curve[(i + 1) % len(curve)]
    return a + s * (b - a), b - a


_GENERIC = None


def linking_number(p, q):
    global _GENERIC
    if _GENERIC is None:
        _GENERIC = rotation(0.523, 0.291, 0.137)
    p = p @ _GENERIC.T
    q = q @ _GENERIC.T
    total = 0
    for i, s, j, t in find_crossings(p, q, False):
        pp, dp = point_on(p, i, s)
        qp, dq = point_on(q, j, t)
        if pp[2] > qp[2]:
            over, under = dp, dq
        else:
            over, under = dq, dp
        total += 1 if over[0] * under[1] - over[1] * under[0] > 0 else -1
    assert total % 2 == 0
    return total // 2


# ---------------------------------------------------------------------------
# framing and satellites


def arclength(curve):
    d = np.linalg.norm(np.roll(curve, -1, axis=0) - curve, axis=1)
    cum = np.concatenate([[0.0], np.cumsum(d)])
    return cum / cum[-1]


def zero_frame(curve):
    """Unit normal field N along curve whose push-off has linking number 0
    with the curve."""
    n = len(curve)
    tang = np.roll(curve, -1, axis=0) - np.roll(curve, 1, axis=0)
    tang /= np.linalg.norm(tang, axis=1)[:, None]
    trial = np.array([0.3, 0.5, 0.8])
    nrm = np.zeros_like(curve)
    v = trial - trial.dot(tang[0]) * tang[0]
    nrm[0] = v / np.linalg.norm(v)
    for k in range(1, n):
        v = nrm[k - 1] - nrm[k - 1].dot(tang[k]) * tang[k]
        nrm[k] = v / np.linalg.norm(v)
    # holonomy: angle from transported nrm[n-1] (moved to tang[0]) to nrm[0]
    v = nrm[n - 1] - nrm[n - 1].dot(tang[0]) * tang[0]
    v /= np.linalg.norm(v)
    bin0 = np.cross(tang[0], nrm[0])
    hol = math.atan2(v.dot(bin0), v.dot(nrm[0]))
    frac = arclength(curve)[:-1]

    def rotated(extra_turns):
        ang = hol * frac + 2.0 * np.pi * extra_turns * frac
        binv = np.cross(tang, nrm)
        return np.cos(ang)[:, None] * nrm - np.sin(ang)[:, None] * binv

    eps = 1e-4
    lk0 = linking_number(curve, curve + eps * rotated(0))
    if lk0 == 0:
        return rotated(0), tang
    for turns in (-lk0, lk0):
        f = rotated(turns)
        if linking_number(curve, curve + eps * f) == 0:
            return f, tang
    raise RuntimeError("could not find 0-framing")


def chaikin(poly, rounds=5):
    p = np.asarray(poly, float)
    for _ in range(rounds):
        q = np.roll(p, -1, axis=0)
        p = np.stack([0.75 * p + 0.25 * q, 0.25 * p + 0.75 * q], axis=1).reshape(-1, 3)
    return p


def resample(poly, dt):
    out = []
    n = len(poly)
    for k in range(n):
        a = poly[k]
        b = poly[(k + 1) % n]
        steps = max(1, int(math.ceil(abs(b[0] - a[0]) / dt)))
        for j in range(steps):
            out.append(a + (b - a) * (j / steps))
    return np.array(out)


def satellite(companion, radius, patterns, dt=0.002):
    frame, tang = zero_frame(companion)
    binv = np.cross(tang, frame)
    frac = arclength(companion)
    ext = np.vstack([companion, companion[:1]])
    fext = np.vstack([frame, frame[:1]])
    bext = np.vstack([binv, binv[:1]])
    out = []
    for pat in patterns:
        pts = resample(chaikin(pat), dt)
        res = []
        for t, u, v in pts:
            tt = t % 1.0
            k = int(np.searchsorted(frac, tt, side="right")) - 1
            k = min(max(k, 0), len(companion) - 1)
            w = (tt - frac[k]) / (frac[k + 1] - frac[k])
            pos = (1 - w) * ext[k] + w * ext[k + 1]
            f = (1 - w) * fext[k] + w * fext[k + 1]
            g = (1 - w) * bext[k] + w * bext[k + 1]
            f /= np.linalg.norm(f)
            g -= g.dot(f) * f
            g /= np.linalg.norm(g)
            res.append(pos + radius * (u * f + v * g))
        out.append(np.array(res))
    return out


def hook_loop(s0, s1, flat_to, pierce_to, direction):
    """Thin loop in the solid torus spanning [s0, s1] with a flat hook
    reaching forward to flat_to and a piercing hook reaching back to
    pierce_to (which must lie inside another flat hook)."""
    d = 0.8 * direction
    return [
        (s0, 0.9, 0.0),
        (s1, 0.9, 0.0),
        (flat_to, 0.9, 0.0),
        (flat_to, -0.9, 0.0),
        (s1, -0.9, 0.0),
        (s0, -0.9, 0.0),
        (s0 - 0.02, -0.3, -d),
        (pierce_to, -0.3, -d),
        (pierce_to, -0.3, d),
        (s0 - 0.02, -0.3, d),
    ]


def whitehead_double(companion, radius):
    pat = hook_loop(0.08, 0.92, 1.04, -0.04, 1.0)
    return satellite(companion, radius, [pat])[0]


def bing_double(companion, radius):
    c1 = hook_loop(0.2, 0.52, 0.65, 0.1, 1.0)
    for direction in (1.0, -1.0):
        c2 = hook_loop(0.7, 1.02, 1.15, 0.6, direction)
        a, b = satellite(companion, radius, [c1, c2])
        if linking_number(a, b) == 0:
            return a, b
    raise RuntimeError("bing clasps do not cancel")


# ---------------------------------------------------------------------------
# PD extraction


def pd_code(components, rot, name):
    comps = [c @ rot.T for c in components]
    ncomp = len(comps)
    crossings = []  # (comp_p, i, s, comp_q, j, t)
    for a in range(ncomp):
        for b in range(a, ncomp):
            for i, s, j, t in find_crossings(comps[a], comps[b], a == b):
                crossings.append((a, i, s, b, j, t))
    events = [[] for _ in range(ncomp)]
    info = []
    for x, (a, i, s, b, j, t) in enumerate(crossings):
        pa, da = point_on(comps[a], i, s)
        pb, db = point_on(comps[b], j, t)
        assert abs(pa[2] - pb[2]) > 1e-9, "vertical tangency"
        a_over = pa[2] > pb[2]
        events[a].append((i + s, x, a_over))
        events[b].append((j + t, x, not a_over))
        info.append((da[:2], db[:2], a_over))
    order = []
    for c in range(ncomp):
        events[c].sort()
        if not events[c]:
            raise RuntimeError(f"{name}: component {c + 1} has no crossings")
        order.append(c)
    # label edges: edge k of component c runs from event k to event k+1
    base = 1
    first = []
    for c in range(ncomp):
        first.append(base)
        base += len(events[c])
    roles = {}
    for c in range(ncomp):
        m = len(events[c])
        for k, (_, x, is_over) in enumerate(events[c]):
            incoming = first[c] + (k - 1) % m
            outgoing = first[c] + k
            roles.setdefault(x, {})["over" if is_over else "under"] = (incoming, outgoing, c, m)
    pd = []
    signs = []
    over_dir = {}
    for x in range(len(crossings)):
        da, db, a_over = info[x]
        o, u = (da, db) if a_over else (db, da)
        ui, uo, _, _ = roles[x]["under"]
        oi, oo, oc, om = roles[x]["over"]
        cr = o[0] * u[1] - o[1] * u[0]
        if cr > 0:
            pd.append([ui, oo, uo, oi])
            signs.append(1)
        else:
            pd.append([ui, oi, uo, oo])
            signs.append(-1)
        if om == 2:
            over_dir[str(x)] = "ascending" if oi < oo else "descending"
    doc = {
        "name": name,
        "crossings": pd,
        "components": [[first[c], first[c] + len(events[c]) - 1] for c in range(ncomp)],
    }
    if over_dir:
        doc["over_dir"] = over_dir
    return doc, signs


def check_linking(components, expect):
    n = len(components)
    for i in range(n):
        for j in range(i + 1, n):
            lk = linking_number(components[i], components[j])
            want = expect.get((i + 1, j + 1), 0)
            assert lk == want, f"lk({i + 1},{j + 1}) = {lk}, expected {want}"


# ---------------------------------------------------------------------------
# the corpus


def hopf():
    a = circle((0, 0, 0), 2.0, np.array([1, 0, 0]), np.array([0, 1, 0]))
    b = circle((2, 0, 0), 2.0, np.array([-1, 0, 0]), np.array([0, 0, 1]))
    if linking_number(a, b) < 0:
        b = b[::-1].copy()
    return a, b


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "crates", "core", "fixtures")
    os.makedirs(out_dir, exist_ok=True)
    view = rotation(0.31, 0.17, 0.05)
    alt_view = rotation(1.13, -0.41, 0.7)

    def emit(fname, comps, rot, name, extra=None):
        doc, signs = pd_code(comps, rot, name)
        if extra:
            doc.update(extra)
        with open(os.path.join(out_dir, fname), "w") as fh:
            fh.write(to_json(doc))
        print(f"{fname}: {len(doc['crossings'])} crossings, {len(comps)} components")

    a, b = hopf()
    check_linking([a, b], {(1, 2): 1})
    emit("hopf.json", [a, b], view, "hopf")
    emit("hopf_alt.json", [a, b], alt_view, "hopf (second projection)")

    # two round circles stacked vertically: crossings, but unlinked
    u1 = circle((0, 0, 0), 2.0, np.array([1, 0, 0]), np.array([0, 1, 0]))
    u2 = circle((1.5, 0.3, 1.0), 2.0, np.array([1, 0, 0]), np.array([0, 1, 0]))
    check_linking([u1, u2], {})
    emit("unlink2.json", [u1, u2], view, "2-component unlink")

    wh = whitehead_double(b, 0.35)
    check_linking([a, wh], {})
    emit("whitehead.json", [a, wh], view, "whitehead link")
    emit("k1.json", [wh, a], view, "K1: whitehead link, 0-surgery on component 2",
         surgery([2]))

    b1, b2 = bing_double(b, 0.35)
    check_linking([a, b1, b2], {})
    emit("borromean.json", [a, b1, b2], view, "borromean rings")
    emit("borromean_alt.json", [a, b1, b2], alt_view, "borromean rings (second projection)")

    w3 = whitehead_double(b2, 0.05)
    check_linking([a, b1, w3], {})
    emit("w3br.json", [a, b1, w3], view, "whitehead double of borromean component 3")
    emit("k2.json", [w3, a, b1], view, "K2: W3(BR), 0-surgery on the borromean pair",
         surgery([2, 3]))

    c1, c2 = bing_double(b2, 0.05)
    check_linking([a, b1, c1, c2], {})
    w4 = whitehead_double(c2, 0.008)
    check_linking([a, b1, c1, w4], {})
    emit("k3.json", [w4, a, b1, c1], view,
         "K3: iterated bing double with whitehead-doubled last component, 0-surgery on the rest",
         surgery([2, 3, 4]))


def surgery(surgered):
    return {
        "knot_component": 1,
        "surgered": surgered,
        "framings": [0] * len(surgered),
        "unlink_assertion": True,
    }


def to_json(doc):
    lines = ["{"]
    keys = list(doc.keys())
    for n, k in enumerate(keys):
        comma = "," if n + 1 < len(keys) else ""
        if k == "crossings":
            lines.append('  "crossings": [')
            rows = doc[k]
            for r, row in enumerate(rows):
                lines.append("    " + json.dumps(row) + ("," if r + 1 < len(rows) else ""))
            lines.append("  ]" + comma)
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(doc[k])}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    main()
