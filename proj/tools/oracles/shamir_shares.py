#!/usr/bin/env python3
"""Independent reference for the masked-polynomial share transfer.

f(i) = sum_j x_j i^(j-1) + sum_k r_k i^(d-ell+k-1), shares at points 1..d.
Printed values are frozen into tests/unit_protocol_engine.cpp.
"""
from itertools import product, combinations


def shares(x, r, d, q):
    ell = len(r)
    out = []
    for i in range(1, d + 1):
        v = sum(xj * pow(i, j, q) for j, xj in enumerate(x))
        v += sum(rk * pow(i, len(x) + k, q) for k, rk in enumerate(r))
        out.append(v % q)
    return out


def solve(sh, d, q):
    # invert the d x d system V[i][j] = (i+1)^j
    M = [[pow(i + 1, j, q) for j in range(d)] + [sh[i]] for i in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if M[i][c] % q)
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], q - 2, q)
        M[c] = [v * inv % q for v in M[c]]
        for i in range(d):
            if i != c and M[i][c] % q:
                f = M[i][c]
                M[i] = [(a - f * b) % q for a, b in zip(M[i], M[c])]
    return [M[i][d] for i in range(d)]


def main():
    # pinned example: d=2, ell=1, q=5, x=(3), r=(2)
    print("d=2 ell=1 q=5 x=(3,) r=(2,) -> shares", shares([3], [2], 2, 5))

    # exhaustive secrecy + reconstruction for the acceptance grid
    for d in [2, 3]:
        for ell in range(1, d):
            for q in [5, 7]:
                ok_rec = True
                ok_sec = True
                for x in product(range(q), repeat=d - ell):
                    per_subset = {}
                    for r in product(range(q), repeat=ell):
                        sh = shares(list(x), list(r), d, q)
                        coeff = solve(sh, d, q)
                        if tuple(coeff[:d - ell]) != x:
                            ok_rec = False
                        for sub in combinations(range(d), ell):
                            key = (sub, tuple(sh[i] for i in sub))
                            per_subset[key] = per_subset.get(key, 0) + 1
                    # every ell-subset value combo appears exactly once per mask
                    for sub in combinations(range(d), ell):
                        vals = [v for (s, _), v in per_subset.items() if s == sub]
                        if len(vals) != q ** ell or set(vals) != {1}:
                            ok_sec = False
                print(f"d={d} ell={ell} q={q}: reconstruct={ok_rec} "
                      f"ell-shares uniform per x={ok_sec}")


if __name__ == "__main__":
    main()
