#!/usr/bin/env python3
"""Oracle: general-column decode schedule for fields too small for Vandermonde.

fig2(3) at q=2 needs three independent decode columns at the terminal, but
F_2 admits only two distinct Vandermonde directions.  We test a deterministic
lex-ordered column schedule:
  - terminal set columns: lex-first unused nonzero vectors (e1 first);
  - relay node columns: lex-first unused with a nonzero coordinate outside
    the key projection span (coords 0..d-ell-1);
  - per-system aux columns: lex-first keeping the system independent.
Exact 2^6-state enumeration decides security; we also exhaustively search all
assignments to confirm the rule picks one of the secure ones.
"""
import itertools
from fractions import Fraction
import math

q = 2
d = 3
ell = 1


def lex_vec(val):
    return tuple((val // (q ** i)) % q for i in range(d))


def independent(cols):
    # Gaussian elimination over F_q on the列 list.
    rows = [list(c) for c in cols]
    rank = 0
    for col in range(d):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % q), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], q - 2, q)
        rows[rank] = [(x * inv) % q for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % q:
                f = rows[r][col]
                rows[r] = [(a - f * b) % q for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(cols)


def sym_entries():
    return [(i, j) for i in range(d) for j in range(i, d)]


ENTRIES = sym_entries()


def bilinear(v, u):
    """Row of coefficients of v^T M u over upper-triangle vars."""
    row = []
    for (i, j) in ENTRIES:
        c = v[i] * u[j] + (v[j] * u[i] if i != j else 0)
        row.append(c % q)
    return tuple(row)


def states():
    return itertools.product(range(q), repeat=len(ENTRIES))


def ev(row, st):
    return sum(a * b for a, b in zip(row, st)) % q


def audit(key_rows, obs_rows):
    joint = {}
    for st in states():
        k = tuple(ev(r, st) for r in key_rows)
        o = tuple(ev(r, st) for r in obs_rows)
        joint[(k, o)] = joint.get((k, o), 0) + 1
    total = sum(joint.values())
    km, om = {}, {}
    for (k, o), c in joint.items():
        km[k] = km.get(k, 0) + c
        om[o] = om.get(o, 0) + c
    zero = all(c * total == km[k] * om[o] for (k, o), c in joint.items())
    mi = sum(
        Fraction(c, total) * (math.log2(c * total) - math.log2(km[k] * om[o]))
        for (k, o), c in joint.items()
    )
    return zero, float(mi), km


def check(u_t, u_v1, u_v2, cols_v1, cols_v2, c1):
    # decode feasibility
    if not (independent(cols_v1) and independent(cols_v2)):
        return None
    if not independent([c1, u_v1, u_v2]):
        return None
    key_rows = [bilinear(tuple(1 if k == i else 0 for k in range(d)), u_t) for i in range(d - ell)]
    # uniformity
    zero, mi, km = audit(key_rows, [])
    if len(km) != q ** (d - ell) or len(set(km.values())) != 1:
        return None
    # beta = {v1}: three in-symbols + projection sent to t
    obs_v1 = [bilinear(u_v1, c) for c in cols_v1] + [bilinear(u_t, u_v1)]
    z1, m1, _ = audit(key_rows, obs_v1)
    obs_v2 = [bilinear(u_v2, c) for c in cols_v2] + [bilinear(u_t, u_v2)]
    z2, m2, _ = audit(key_rows, obs_v2)
    return (z1 and z2, m1, m2)


def rule_assignment():
    used = set()
    # terminal first: lex-first nonzero
    u_t = next(lex_vec(v) for v in range(1, q ** d) if any(lex_vec(v)))
    used.add(u_t)
    relays = []
    for _ in range(2):
        u = next(
            lex_vec(v)
            for v in range(1, q ** d)
            if lex_vec(v) not in used and any(lex_vec(v)[i] for i in range(d - ell, d))
        )
        used.add(u)
        relays.append(u)
    u_v1, u_v2 = relays

    def aux_cols(fixed, count):
        out = []
        for v in range(1, q ** d):
            c = lex_vec(v)
            if independent(list(fixed) + out + [c]):
                out.append(c)
                if len(out) == count:
                    break
        return out

    cols_v1 = aux_cols([], d)
    cols_v2 = aux_cols([], d)
    c1 = aux_cols([u_v1, u_v2], 1)[0]
    return u_t, u_v1, u_v2, cols_v1, cols_v2, c1


u_t, u_v1, u_v2, cols_v1, cols_v2, c1 = rule_assignment()
print("rule assignment:")
print("  u_t =", u_t, " u_v1 =", u_v1, " u_v2 =", u_v2)
print("  cols_v1 =", cols_v1, " cols_v2 =", cols_v2, " c1 =", c1)
res = check(u_t, u_v1, u_v2, cols_v1, cols_v2, c1)
print("  decode ok, key uniform:", res is not None)
if res:
    print("  beta={v1},{v2} zero:", res[0], " mi:", res[1], res[2])

# exhaustive search over (u_t, u_v1, u_v2, c1) with basis aux cols
nonzero = [lex_vec(v) for v in range(1, q ** d)]
basis = [tuple(1 if k == i else 0 for k in range(d)) for i in range(d)]
good = 0
total = 0
for ut, uv1, uv2, cc in itertools.product(nonzero, repeat=4):
    total += 1
    r = check(ut, uv1, uv2, basis, basis, cc)
    if r and r[0]:
        good += 1
print(f"search: {good}/{total} assignments secure (with basis aux cols)")
