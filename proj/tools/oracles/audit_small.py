#!/usr/bin/env python3
"""Independent brute-force audits of the small pinned fixtures.

Implements the schemes directly (no shared code with the C++ library) and
enumerates the full randomness space, reporting exact mutual-information
verdicts.  Printed values are frozen into tests/unit_security_oracle.cpp and
tests/acceptance_test.cpp.

Conventions under test (must match the library):
  * identity Vandermonde indices: terminal sets first (set order), then
    non-source non-terminal nodes in declaration order;
  * source-column indices: globally fresh values first, then wrap preferring
    values not used as identities, always avoiding same-system collisions and
    the receiving node's parent identities.
"""
from fractions import Fraction
from itertools import product
import math


def vand(alpha, h, q):
    return [pow(alpha, k, q) for k in range(h)]


def bil(a, M, b, q):
    return sum(a[i] * M[i][j] * b[j] for i in range(len(a)) for j in range(len(b))) % q


def mi_exact(rows):
    """rows: list of (key, obs) tuples, one per enumerated state.
    Returns (is_zero, mi_bits)."""
    total = len(rows)
    joint = {}
    km = {}
    om = {}
    for k, o in rows:
        joint[(k, o)] = joint.get((k, o), 0) + 1
        km[k] = km.get(k, 0) + 1
        om[o] = om.get(o, 0) + 1
    is_zero = all(c * total == km[k] * om[o] for (k, o), c in joint.items())
    mi = 0.0
    for (k, o), c in joint.items():
        mi += (c / total) * math.log2(Fraction(c * total, km[k] * om[o]))
    return is_zero, mi, km


def fig2_full(q, d, alpha_T, alpha_v, cols):
    """Full key-cast scheme on fig2(d).  alpha_v[i] = identity of v_i;
    cols[i] = list of d source-column alphas for v_i.
    Returns per-state dict of named symbols + key tuple, over all symmetric M."""
    ell = 1
    states = []
    vT = vand(alpha_T, d, q)
    vs = [vand(a, d, q) for a in alpha_v]
    idx = [(i, j) for i in range(d) for j in range(i, d)]
    for vals in product(range(q), repeat=len(idx)):
        M = [[0] * d for _ in range(d)]
        for (i, j), x in zip(idx, vals):
            M[i][j] = M[j][i] = x
        sym = {}
        for i in range(d):
            for k, ca in enumerate(cols[i]):
                sym[f"s>v{i+1}.{k}"] = bil(vs[i], M, vand(ca, d, q), q)
            sym[f"v{i+1}>t"] = bil(vT, M, vs[i], q)
        key = tuple(sum(M[r][j] * vT[j] for j in range(d)) % q for r in range(d - ell))
        states.append((sym, key))
    return states


def audit(states, betas, label):
    total = len(states)
    print(f"-- {label}: states={total}")
    all_zero = True
    for bname, obs_keys in betas:
        rows = [(key, tuple(sym[k] for k in obs_keys)) for sym, key in states]
        z, mi, km = mi_exact(rows)
        all_zero &= z
        print(f"   beta {bname}: is_zero={z} mi_bits={mi:.4f}")
    km = {}
    for _, key in states:
        km[key] = km.get(key, 0) + 1
    uniform = len(set(km.values())) == 1 and len(km) == total // list(km.values())[0]
    print(f"   key marginal: {sorted(km.values())} uniform={uniform}")
    return all_zero


def main():
    # fig2(2), q=3, policy allocation: alpha_T=0, v1=1, v2=2, cols {0,1} twice
    st = fig2_full(3, 2, 0, [1, 2], [[0, 1], [0, 1]])
    ok = audit(st, [("{}", []),
                    ("{v1}", ["s>v1.0", "s>v1.1", "v1>t"]),
                    ("{v2}", ["s>v2.0", "s>v2.1", "v2>t"])],
               "fig2(2) q=3 terminal-first identities")
    print("   ALL ZERO:", ok)

    # negative control: node-declaration-first identities (v1=0, v2=1, T=2) leak
    st = fig2_full(3, 2, 2, [0, 1], [[0, 1], [0, 1]])
    ok = audit(st, [("{v1}", ["s>v1.0", "s>v1.1", "v1>t"]),
                    ("{v2}", ["s>v2.0", "s>v2.1", "v2>t"])],
               "fig2(2) q=3 node-first identities (negative control)")
    print("   ALL ZERO:", ok, "(expected False)")

    # two-source fig2-like fixture: sources s1,s2; intermediate u; terminal t.
    # edges: s_j->u x2, s_j->t x1, u->t x1.  d=2, ell=1, x=1, q=2.
    # one full-scheme pass per source; K = k1 + k2 (Vandermonde G = (1,1)^T).
    q, d = 2, 2
    alpha_T, alpha_u = 0, 1
    vT, vu = vand(alpha_T, d, q), vand(alpha_u, d, q)
    ucols = [0, 1]   # wrap: no fresh values at q=2
    tcol = 0         # avoid parent identity {alpha_u}=\{1\}
    idx = [(i, j) for i in range(d) for j in range(i, d)]
    states = []
    for vals in product(range(q), repeat=2 * len(idx)):
        Ms = []
        for sidx in range(2):
            M = [[0] * d for _ in range(d)]
            for (i, j), x in zip(idx, vals[sidx * 3:(sidx + 1) * 3]):
                M[i][j] = M[j][i] = x
            Ms.append(M)
        sym = {}
        for sidx, M in enumerate(Ms):
            sj = f"s{sidx+1}"
            for k, ca in enumerate(ucols):
                sym[f"{sj}>u.{k}"] = bil(vu, M, vand(ca, d, q), q)
            sym[f"{sj}>t"] = bil(vT, M, vand(tcol, d, q), q)
            sym[f"u>t.{sidx}"] = bil(vT, M, vu, q)
        for sidx, M in enumerate(Ms):
            sym[f"rand{sidx+1}"] = tuple(vals[sidx * 3:(sidx + 1) * 3])
        k1 = sum(Ms[0][0][j] * vT[j] for j in range(d)) % q
        k2 = sum(Ms[1][0][j] * vT[j] for j in range(d)) % q
        key = ((k1 + k2) % q,)
        states.append((sym, key))
    betas = [("{}", []),
             ("{u}", ["s1>u.0", "s1>u.1", "s2>u.0", "s2>u.1", "u>t.0", "u>t.1"]),
             ("{s1}", ["rand1", "s1>u.0", "s1>u.1", "s1>t"]),
             ("{s1,u}", ["rand1", "s1>u.0", "s1>u.1", "s1>t",
                         "s2>u.0", "s2>u.1", "u>t.0", "u>t.1"]),
             ("{s2,u}", ["rand2", "s2>u.0", "s2>u.1", "s2>t",
                         "s1>u.0", "s1>u.1", "u>t.0", "u>t.1"])]
    ok = audit(states, betas, "two-source fixture d=2 q=2 (64 states)")
    print("   ALL ZERO:", ok)

    # fig1 diamond: s1->a, s2->b, a->t1, a->t2, b->t1, b->t2;
    # a forwards m1, b forwards m2, K = m1+m2, q=2.
    q = 2
    states = []
    for m1, m2 in product(range(q), repeat=2):
        sym = {"s1>a": m1, "s2>b": m2, "a>t1": m1, "a>t2": m1,
               "b>t1": m2, "b>t2": m2, "rand_s1": m1, "rand_s2": m2}
        states.append((sym, ((m1 + m2) % q,)))
    betas = [("{}", []), ("{a}", ["s1>a", "a>t1", "a>t2"]),
             ("{b}", ["s2>b", "b>t1", "b>t2"]),
             ("{s1}", ["rand_s1", "s1>a"]), ("{s2}", ["rand_s2", "s2>b"]),
             ("{s1,a}", ["rand_s1", "s1>a", "a>t1", "a>t2"]),
             ("{s2,a}", ["rand_s2", "s2>b", "s1>a", "a>t1", "a>t2"])]
    ok = audit(states, betas, "fig1 key K=m1+m2, q=2")
    print("   ALL ZERO:", ok)
    # separation: delivering m1 alone is not secure (node a sees it)
    rows = [(tuple([sym["s1>a"]]), (sym["s1>a"], sym["a>t1"], sym["a>t2"]))
            for sym, _ in states]
    z, mi, _ = mi_exact(rows)
    print(f"   multicast-of-m1 control at beta={{a}}: is_zero={z} mi_bits={mi:.4f} (expected leak)")


if __name__ == "__main__":
    main()
