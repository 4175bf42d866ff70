#!/usr/bin/env python3
"""Independent reference values for the exact-field linear algebra tests.

Run from anywhere: python3 tools/oracles/field_examples.py
Printed values are frozen into tests/unit_ff_linalg.cpp.
"""
from itertools import product


def mat_inverse(A, q):
    n = len(A)
    M = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if M[i][c] % q), None)
        if piv is None:
            return None
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], q - 2, q)
        M[r] = [x * inv % q for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] % q:
                f = M[i][c]
                M[i] = [(x - f * y) % q for x, y in zip(M[i], M[r])]
        r += 1
    return [row[n:] for row in M]


def vand(alpha, h, q):
    return [pow(alpha, k, q) for k in range(h)]


def main():
    # 2x2 inverse example over F_3
    A = [[1, 1], [1, 2]]
    print("inverse([[1,1],[1,2]], q=3) =", mat_inverse(A, 3))

    # exhaustive: square Vandermonde matrices with pairwise-distinct alphas are
    # invertible for q <= 11, d <= 4
    bad = 0
    total = 0
    for q in [2, 3, 5, 7, 11]:
        for d in range(1, 5):
            if d > q:
                continue
            for alphas in product(range(q), repeat=d):
                if len(set(alphas)) != d:
                    continue
                total += 1
                cols = [vand(a, d, q) for a in alphas]
                M = [[cols[j][i] for j in range(d)] for i in range(d)]
                if mat_inverse(M, q) is None:
                    bad += 1
    print(f"distinct-alpha Vandermonde systems checked={total} singular={bad}")

    # leading-block property: for distinct points, the top (d-z) x (d-z) block of
    # the d-column system with consecutive powers 0..d-z-1 is invertible
    bad = 0
    total = 0
    for q in [3, 5, 7]:
        for d in range(2, 5):
            for z in range(1, d):
                h = d - z
                if h > q:
                    continue
                for alphas in product(range(q), repeat=h):
                    if len(set(alphas)) != h:
                        continue
                    total += 1
                    M = [[pow(a, i, q) for a in alphas] for i in range(h)]
                    if mat_inverse(M, q) is None:
                        bad += 1
    print(f"leading-block systems checked={total} singular={bad}")


if __name__ == "__main__":
    main()
