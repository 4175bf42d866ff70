#!/usr/bin/env python3
"""Independent enumeration of the three matrix-distribution lemmas and the
converse equality, at the dimensions pinned by the acceptance suite.
Printed values are frozen into tests/unit_security_oracle.cpp.
"""
from itertools import product


def mats_sym(d, q):
    idx = [(i, j) for i in range(d) for j in range(i, d)]
    for vals in product(range(q), repeat=len(idx)):
        M = [[0] * d for _ in range(d)]
        for (i, j), x in zip(idx, vals):
            M[i][j] = M[j][i] = x
        yield M


def mat_mul(A, B, q):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) % q
             for j in range(len(B[0]))] for i in range(len(A))]


def rank(A, q):
    M = [row[:] for row in A]
    r = 0
    rows, cols = len(M), len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] % q), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], q - 2, q)
        M[r] = [x * inv % q for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] % q:
                f = M[i][c]
                M[i] = [(x - f * y) % q for x, y in zip(M[i], M[r])]
        r += 1
    return r


def invertible(A, q):
    return rank(A, q) == len(A)


def lemma1(d, ell, q):
    """Over every invertible U: conditioning symmetric M on M U[:,:ell] = 0 and
    mapping K = U^T M U must give K with zero first ell rows/cols and the
    trailing block G hitting every symmetric (d-ell) matrix exactly once."""
    n_u = 0
    ok = True
    gsize = q ** ((d - ell) * (d - ell + 1) // 2)
    for entries in product(range(q), repeat=d * d):
        U = [list(entries[i * d:(i + 1) * d]) for i in range(d)]
        if not invertible(U, q):
            continue
        n_u += 1
        gs = {}
        cnt = 0
        for M in mats_sym(d, q):
            MU = mat_mul(M, U, q)
            if any(MU[i][j] for i in range(d) for j in range(ell)):
                continue
            cnt += 1
            Ut = [[U[i][j] for i in range(d)] for j in range(d)]
            K = mat_mul(Ut, MU, q)
            if any(K[i][j] for i in range(d) for j in range(d)
                   if i < ell or j < ell):
                ok = False
            g = tuple(K[i][j] for i in range(ell, d) for j in range(i, d))
            gs[g] = gs.get(g, 0) + 1
        if cnt != gsize or len(gs) != gsize or set(gs.values()) != {1}:
            ok = False
    return n_u, ok


def lemma2(d, ell, q):
    """For each (alpha_v, alphas_eps) with pairwise-distinct alphas: exact
    independence of [Mv]_{1:d-ell} and M V_eps  must hold exactly when the
    reachable set {Delta v : Delta symmetric, Delta V_eps = 0} projects onto
    all of F_q^{d-ell}.  Returns per-combo (alphas, predicted, actual)."""
    out = []
    for alphas in product(range(q), repeat=ell + 1):
        if len(set(alphas)) != ell + 1:
            continue
        av, aes = alphas[0], alphas[1:]
        v = [pow(av, k, q) for k in range(d)]
        Veps = [[pow(a, k, q) for a in aes] for k in range(d)]
        # predicted: projection of the annihilator image
        proj = set()
        for D in mats_sym(d, q):
            if any(sum(D[i][k] * Veps[k][j] for k in range(d)) % q
                   for i in range(d) for j in range(ell)):
                continue
            proj.add(tuple(sum(D[r][k] * v[k] for k in range(d)) % q
                           for r in range(d - ell)))
        predicted = len(proj) == q ** (d - ell)
        # actual: exact joint-distribution factorization
        joint, km, om = {}, {}, {}
        total = 0
        for M in mats_sym(d, q):
            keyv = tuple(sum(M[r][k] * v[k] for k in range(d)) % q
                         for r in range(d - ell))
            obs = tuple(sum(M[i][k] * Veps[k][j] for k in range(d)) % q
                        for i in range(d) for j in range(ell))
            total += 1
            joint[(keyv, obs)] = joint.get((keyv, obs), 0) + 1
            km[keyv] = km.get(keyv, 0) + 1
            om[obs] = om.get(obs, 0) + 1
        actual = all(c * total == km[k] * om[o] for (k, o), c in joint.items())
        out.append((alphas, predicted, actual))
    return out


def lemma4(d, ell, m, n, q):
    """A uniform (d-ell)x(n-m); B Vandermonde (n-m)x(n-ell), alphas 0..n-ell-1;
    C = AB must hit every (d-ell)x(n-ell) matrix exactly q^{(d-ell)(ell-m)}
    times."""
    B = [[pow(a, i, q) for a in range(n - ell)] for i in range(n - m)]
    assert rank(B, q) == n - ell
    counts = {}
    for entries in product(range(q), repeat=(d - ell) * (n - m)):
        A = [list(entries[i * (n - m):(i + 1) * (n - m)]) for i in range(d - ell)]
        C = tuple(tuple(r) for r in mat_mul(A, B, q))
        counts[C] = counts.get(C, 0) + 1
    want = q ** ((d - ell) * (ell - m))
    ok = len(counts) == q ** ((d - ell) * (n - ell)) and set(counts.values()) == {want}
    return ok, want, len(counts)


def main():
    for (d, ell, q) in [(2, 1, 2), (2, 1, 3), (3, 1, 2)]:
        n_u, ok = lemma1(d, ell, q)
        print(f"lemma1 d={d} ell={ell} q={q}: invertible_U={n_u} pass={ok}")
    for (d, ell, q) in [(2, 1, 3), (3, 1, 2)]:
        rowsv = lemma2(d, ell, q)
        match = all(p == a for _, p, a in rowsv)
        indep = sum(1 for _, p, _ in rowsv if p)
        print(f"lemma2 d={d} ell={ell} q={q}: combos={len(rowsv)} "
              f"independent={indep} predicted==actual={match}")
        for alphas, p, a in rowsv:
            print(f"   alphas={alphas} predicted={p} actual={a}")
    for dims in [(2, 1, 1, 2, 2), (3, 2, 1, 3, 2), (3, 2, 2, 3, 3), (3, 1, 1, 3, 3)]:
        ok, want, ncells = lemma4(*dims)
        d, ell, m, n, q = dims
        print(f"lemma4 d={d} ell={ell} m={m} n={n} q={q}: pass={ok} "
              f"cells={ncells} per_cell={want}")

    # converse equality on fig2(2) q=2 and fig2(3) q=3 (terminal-first alphas)
    import math
    for (d, q, alpha_T, alpha_v) in [(2, 2, 0, [1, 0]), (3, 3, 0, [1, 2, 0])]:
        ell = 1
        vT = [pow(alpha_T, k, q) for k in range(d)]
        km = {}
        for M in mats_sym(d, q):
            key = tuple(sum(M[r][j] * vT[j] for j in range(d)) % q
                        for r in range(d - ell))
            km[key] = km.get(key, 0) + 1
        total = sum(km.values())
        H = -sum(c / total * math.log2(c / total) for c in km.values())
        bound = (d - ell) * 1 * math.log2(q)
        print(f"converse fig2({d}) q={q}: H(K)={H:.6f} bound={bound:.6f} "
              f"uniform={set(km.values()) == {total // q ** (d - ell)} and len(km) == q ** (d - ell)}")


if __name__ == "__main__":
    main()
