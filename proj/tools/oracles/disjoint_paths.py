#!/usr/bin/env python3
"""Brute-force internally-vertex-disjoint path packing on fixed small graphs.

The count realizes the connectivity notion used by the library: paths may
share no internal node, parallel edges are independent unit channels, and the
endpoints are uncapacitated.  Printed values are frozen into
tests/unit_network_model.cpp.
"""


def max_packing(nodes, edges, s, t):
    """edges: list of (tail, head) with repetition for parallel edges."""
    best = 0

    def all_paths(used_nodes, used_edges):
        # enumerate simple paths s->t avoiding used internal nodes/edge slots
        out = []

        def dfs(v, path_nodes, path_edges):
            if v == t:
                out.append(list(path_edges))
                return
            for idx, (a, b) in enumerate(edges):
                if a != v or idx in used_edges or idx in path_edges:
                    continue
                if b != t and (b in used_nodes or b in path_nodes):
                    continue
                if b in path_nodes or b == s:
                    continue
                path_edges.append(idx)
                dfs(b, path_nodes | {b}, path_edges)
                path_edges.pop()

        dfs(s, set(), [])
        return out

    def rec(used_nodes, used_edges, k):
        nonlocal best
        best = max(best, k)
        for p in all_paths(used_nodes, used_edges):
            internal = {edges[i][1] for i in p if edges[i][1] != t}
            rec(used_nodes | internal, used_edges | set(p), k + 1)

    rec(set(), set(), 0)
    return best


def fig2(d):
    nodes = ["s"] + [f"v{i}" for i in range(1, d + 1)] + ["t"]
    edges = []
    for i in range(1, d + 1):
        edges += [("s", f"v{i}")] * d
    for i in range(1, d + 1):
        edges.append((f"v{i}", "t"))
    return nodes, edges


def main():
    n, e = fig2(3)
    print("fig2(3): conn(s,t) =", max_packing(n, e, "s", "t"))
    print("fig2(3): conn(s,v1) =", max_packing(n, e, "s", "v1"))

    # type_b_chain(len=2, d=3): s->a1 x3, a1->a2, a2->t, s->t x2
    e = [("s", "a1")] * 3 + [("a1", "a2"), ("a2", "t")] + [("s", "t")] * 2
    print("type_b_chain(2,3): conn(s,t) =", max_packing(None, e, "s", "t"))
    print("type_b_chain(2,3): conn(s,a2) =", max_packing(None, e, "s", "a2"))
    print("type_b_chain(2,3): conn(s,a1) =", max_packing(None, e, "s", "a1"))

    # partial_mix(3,0): s->f1 x3, s->a, a->b, s->j, f1->j, b->j, s->t, f1->t, j->t
    e = ([("s", "f1")] * 3 + [("s", "a"), ("a", "b"), ("s", "j"),
         ("f1", "j"), ("b", "j"), ("s", "t"), ("f1", "t"), ("j", "t")])
    for v in ["f1", "a", "b", "j", "t"]:
        print(f"partial_mix(3,0): conn(s,{v}) =", max_packing(None, e, "s", v))

    # diamond with a shared middle node plus a direct edge
    e = [("s", "a"), ("s", "b"), ("a", "m"), ("b", "m"), ("m", "t"), ("s", "t")]
    print("diamond+direct: conn(s,t) =", max_packing(None, e, "s", "t"))

    # parallel edges straight to the target count individually
    e = [("s", "t")] * 4
    print("4 parallel s->t: conn(s,t) =", max_packing(None, e, "s", "t"))

    # crossing layers: s->{a,b}, a->{c,d}, b->{c,d}, {c,d}->t
    e = [("s", "a"), ("s", "b"), ("a", "c"), ("a", "d"), ("b", "c"),
         ("b", "d"), ("c", "t"), ("d", "t")]
    print("cross-layer: conn(s,t) =", max_packing(None, e, "s", "t"))


if __name__ == "__main__":
    main()
