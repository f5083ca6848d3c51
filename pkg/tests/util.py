"""Shared fixtures-by-hand: small named digraphs and independent brute-force
oracles.  The oracles here deliberately use different algorithms than the
package (recursive DFS instead of BFS, subset enumeration instead of flow) so
agreement is meaningful."""
from __future__ import annotations

import random
from itertools import combinations

from dirtw import Digraph


# -- named instances --------------------------------------------------------

def pendant_pairs_digraph() -> Digraph:
    """Strongly connected 7-vertex digraph with bidirected pairs
    ab, ac, bc, bd, be, cf, cg, de, fg."""
    D = Digraph()
    for u, v in [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("b", "e"),
                 ("c", "f"), ("c", "g"), ("d", "e"), ("f", "g")]:
        D.add_bidirected(u, v)
    return D


def triangle_gadget() -> Digraph:
    """Triangle v1->v2->v3->v1 with a subdivided extra arc on each side."""
    D = Digraph()
    for u, v in [("v1", "x12"), ("x12", "v2"), ("v2", "x23"), ("x23", "v3"),
                 ("v3", "x13"), ("x13", "v1"), ("v1", "v2"), ("v2", "v3"),
                 ("v3", "v1")]:
        D.add_edge(u, v)
    return D


def two_cycle_tail() -> Digraph:
    """Nine-vertex digraph: two 3-cycles over v1..v7 joined head to tail,
    plus a v9/v10 appendix feeding back into v2."""
    D = Digraph()
    for u, v in [("v1", "v3"), ("v3", "v5"), ("v5", "v7"), ("v6", "v4"),
                 ("v4", "v2"), ("v2", "v1"), ("v3", "v4"), ("v6", "v5"),
                 ("v3", "v2"), ("v7", "v6"), ("v9", "v2"), ("v6", "v10"),
                 ("v10", "v9")]:
        D.add_edge(u, v)
    return D


def bidirected_clique(n: int) -> Digraph:
    D = Digraph()
    for i in range(1, n + 1):
        D.add_vertex(i)
    for i, j in combinations(range(1, n + 1), 2):
        D.add_bidirected(i, j)
    return D


def bidirected_cycle(n: int) -> Digraph:
    D = Digraph()
    for i in range(1, n + 1):
        D.add_bidirected(i, i % n + 1)
    return D


def path_digraph(*names) -> Digraph:
    D = Digraph()
    if len(names) == 1:
        D.add_vertex(names[0])
    for u, v in zip(names, names[1:]):
        D.add_edge(u, v)
    return D


def random_digraph(rng: random.Random, n: int, p: float, isolated_ok: bool = True) -> Digraph:
    D = Digraph()
    for v in range(1, n + 1):
        D.add_vertex(v)
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u != v and rng.random() < p:
                D.add_edge(u, v)
    if not isolated_ok:
        vs = list(range(1, n + 1))
        for v in vs:
            if not any(True for _ in D.out_neighbors(v)):
                D.add_edge(v, rng.choice([w for w in vs if w != v]))
    return D


# -- independent oracles -----------------------------------------------------

def dfs_path_exists(D: Digraph, sources, targets) -> bool:
    """Recursive DFS reachability, coded independently of the package BFS."""
    targets = {t for t in targets if t in D}
    visited = set()

    def go(v) -> bool:
        if v in targets:
            return True
        visited.add(v)
        return any(w not in visited and go(w) for w in sorted(D.out_neighbors(v), key=str))

    return any(s not in visited and go(s) for s in sources if s in D)


def brute_scc_partition(D: Digraph) -> set[frozenset]:
    comps = set()
    for v in D.vertices():
        comps.add(frozenset(
            w for w in D.vertices()
            if dfs_path_exists(D, [v], [w]) and dfs_path_exists(D, [w], [v])
        ))
    return comps


def brute_guarded(D: Digraph, S, Z) -> bool:
    """Walk oracle: an S-to-S walk through an outside vertex w decomposes
    into a simple S->w path and a simple w->S path, both avoiding Z."""
    Z = set(Z)
    S = {v for v in S if v in D} - Z
    rest = D.minus(Z)
    for w in rest.vertices():
        if w in S:
            continue
        if dfs_path_exists(rest, S, [w]) and dfs_path_exists(rest, [w], S):
            return False
    return True


def subsets_up_to(items, max_size: int):
    items = sorted(items, key=str)
    for size in range(0, max_size + 1):
        yield from (set(c) for c in combinations(items, size))


def brute_bramble_elements(D: Digraph, T, k: int) -> list[frozenset]:
    """All induced strongly connected subgraphs with at least k terminals,
    found by raw subset enumeration over the DFS strong-component oracle."""
    T = set(T)
    out = []
    verts = sorted(D.vertices(), key=str)
    for size in range(1, len(verts) + 1):
        for S in combinations(verts, size):
            Sset = set(S)
            if len(Sset & T) < k:
                continue
            if brute_scc_partition(D.induced(Sset)) == {frozenset(Sset)}:
                out.append(frozenset(Sset))
    return out


def brute_bramble_hits(elements, X) -> bool:
    X = set(X)
    return all(e & X for e in elements)


def brute_bramble_order(D: Digraph, elements) -> int:
    """Minimum hitting-set size over the explicit element list."""
    if not elements:
        return 0
    for size in range(1, D.n + 1):
        for X in subsets_up_to(D.vertices(), size):
            if len(X) == size and brute_bramble_hits(elements, X):
                return size
    raise AssertionError("the full vertex set hits every element")


def brute_min_vertex_separator(D: Digraph, X, Y) -> int:
    """Minimum number of vertex deletions (terminals deletable) killing every
    X-to-Y path; |V| if even deleting everything relevant cannot (never)."""
    for size in range(0, D.n + 1):
        for S in subsets_up_to(D.vertices(), size):
            if len(S) != size:
                continue
            if not dfs_path_exists(D.minus(S), set(X) - S, set(Y) - S):
                return size
    raise AssertionError("deleting all vertices always separates")
