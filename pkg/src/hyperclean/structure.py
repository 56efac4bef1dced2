"""Exact structure checkers: short cycles, cliques, hypergraph girth.

Hypergraph girth conventions: a "2-cycle" is a pair of edges sharing at
least two vertices; a "3-cycle" is a Berge triangle, three distinct
edges e1, e2, e3 with three distinct vertices v1 in e1&e2, v2 in e2&e3,
v3 in e3&e1.  Girth >= 4 ("locally sparse") means neither occurs.
"""

from __future__ import annotations

from itertools import combinations

from .core import UniformHypergraph
from .errors import DomainError, InstanceTooLargeError

CLIQUE_CHECK_CAP = 64
MAX_CYCLE_LENGTH = 8

PROPERTIES = ("girth4", "triangle-free", "ck-free", "clique-at-most")


def _require_graph(G: UniformHypergraph, what: str) -> None:
    if G.uniformity != 2:
        raise DomainError(f"{what} is a graph property; got uniformity {G.uniformity}")


def _adjacency(G: UniformHypergraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def is_triangle_free(G: UniformHypergraph) -> bool:
    _require_graph(G, "triangle-free")
    adj = _adjacency(G)
    for u, v in G.edges:
        if adj[u] & adj[v]:
            return False
    return True


def is_ck_free(G: UniformHypergraph, k: int) -> bool:
    """No cycle of length exactly k (as a subgraph), 3 <= k <= 8.

    Explicit search: for every edge (u, v), look for a simple u-v path
    of length k-1 avoiding the edge itself.
    """
    _require_graph(G, "ck-free")
    if not 3 <= k <= MAX_CYCLE_LENGTH:
        raise DomainError(f"cycle length must be in [3, {MAX_CYCLE_LENGTH}], got {k}")
    adj = _adjacency(G)

    def path_exists(start: int, goal: int, length: int, used: set[int]) -> bool:
        # simple path with `length` edges from start to goal
        if length == 1:
            return goal in adj[start] and goal not in used
        for w in adj[start]:
            if w == goal or w in used:
                continue
            used.add(w)
            if path_exists(w, goal, length - 1, used):
                used.discard(w)
                return True
            used.discard(w)
        return False

    for u, v in G.edges:
        if path_exists(u, v, k - 1, {u}):
            return False
    return True


def clique_number_at_most(G: UniformHypergraph, k: int, cap: int = CLIQUE_CHECK_CAP) -> bool:
    """True when G has no clique on k+1 vertices (omega <= k)."""
    _require_graph(G, "clique-number")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if G.n > cap:
        raise InstanceTooLargeError(f"n = {G.n} exceeds the clique-check cap {cap}")
    adj_mask = [0] * G.n
    for u, v in G.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u

    target = k + 1

    def extend(cand: int, size: int, floor: int) -> bool:
        # does some clique of `target` vertices extend the current one?
        if size == target:
            return True
        if size + cand.bit_count() < target:
            return False
        t = cand
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            if extend(cand & adj_mask[v] & ~((1 << (v + 1)) - 1), size + 1, v + 1):
                return True
        return False

    full = (1 << G.n) - 1
    return not extend(full, 0, 0)


def is_girth4(H: UniformHypergraph) -> bool:
    """No 2-cycles and no Berge triangles.

    In a 2-cycle-free hypergraph every co-occurring vertex pair has a
    unique witness edge, so a Berge triangle is exactly a triangle in
    the co-occurrence graph whose three witnesses are not all the same
    edge.
    """
    pair_witness: dict[tuple[int, int], int] = {}
    for ei, e in enumerate(H.edges):
        for u, v in combinations(e, 2):
            key = (u, v)
            if key in pair_witness:
                return False  # two edges share >= 2 vertices
            pair_witness[key] = ei
    adj: list[set[int]] = [set() for _ in range(H.n)]
    for (u, v) in pair_witness:
        adj[u].add(v)
        adj[v].add(u)
    for (u, v), we in pair_witness.items():
        for x in adj[u] & adj[v]:
            if x <= v:  # count each triangle once (u < v < x)
                continue
            w1 = pair_witness[(u, x) if u < x else (x, u)]
            w2 = pair_witness[(v, x) if v < x else (x, v)]
            if not (we == w1 == w2):
                return False  # Berge triangle with distinct witnesses
    return True


def check_structure(H: UniformHypergraph, prop: str, k: int | None = None) -> bool:
    """Dispatch: girth4 | triangle-free | ck-free (needs k) |
    clique-at-most (needs k)."""
    if prop == "girth4":
        return is_girth4(H)
    if prop == "triangle-free":
        return is_triangle_free(H)
    if prop == "ck-free":
        if k is None:
            raise DomainError("ck-free needs k")
        return is_ck_free(H, k)
    if prop == "clique-at-most":
        if k is None:
            raise DomainError("clique-at-most needs k")
        return clique_number_at_most(H, k)
    raise DomainError(f"unknown property {prop!r}; known: {PROPERTIES}")
