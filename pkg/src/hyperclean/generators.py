"""Seeded instance generators for the experiment harness.

Every generator checks its own output against the family's structure
checker before returning; sample-and-repair families resample offending
edges up to a retry budget and raise GenerationBudgetExceededError when
it runs out.  All randomness is splitmix64, so generation is
reproducible across platforms and runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import UniformHypergraph, degree_profile, validate
from .errors import DomainError, GenerationBudgetExceededError
from .rng import SplitMix64
from .structure import clique_number_at_most, is_ck_free, is_girth4, is_triangle_free

FAMILIES = (
    "random-uniform",
    "girth4-uniform",
    "triangle-free-graph",
    "ck-free-graph",
    "clique-bounded",
    "random-regular",
)

D_TOLERANCE = 0.10  # achieved average degree within 10% of the target


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    target_d: float
    r: int = 1
    seed: int = 0
    k: int | None = None  # cycle length / clique bound where applicable
    budget_factor: int = 200


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _edge_count_for(spec: FamilySpec) -> int:
    m = round(spec.target_d * spec.n / (spec.r + 1))
    if m < 0:
        raise DomainError("target_d must be nonnegative")
    return m


def _sample_edge(rng: SplitMix64, n: int, size: int) -> tuple[int, ...]:
    picked: list[int] = []
    while len(picked) < size:
        v = rng.next_below(n)
        if v not in picked:
            picked.append(v)
    return tuple(sorted(picked))


def _check_density(H: UniformHypergraph, spec: FamilySpec) -> None:
    if spec.target_d <= 0:
        return
    d = float(degree_profile(H).avg_degree)
    if abs(d - spec.target_d) > D_TOLERANCE * spec.target_d:
        raise GenerationBudgetExceededError(
            f"achieved d = {d:.3f} misses target {spec.target_d} by more than 10%"
        )


def _gen_random_uniform(spec: FamilySpec, rng: SplitMix64) -> UniformHypergraph:
    size = spec.r + 1
    m = _edge_count_for(spec)
    if spec.n < size or m > _binom(spec.n, size):
        raise DomainError(f"cannot place {m} distinct edges of size {size} on {spec.n} vertices")
    edges: set[tuple[int, ...]] = set()
    budget = spec.budget_factor * max(m, 1)
    while len(edges) < m:
        if budget <= 0:
            raise GenerationBudgetExceededError("random-uniform resampling budget exhausted")
        budget -= 1
        edges.add(_sample_edge(rng, spec.n, size))
    return validate(edges, spec.n, size)


def _gen_girth4_uniform(spec: FamilySpec, rng: SplitMix64) -> UniformHypergraph:
    """Sample-and-repair: resample any edge sharing >= 2 vertices with an
    existing edge or closing a Berge triangle."""
    size = spec.r + 1
    m = _edge_count_for(spec)
    if spec.n < size:
        raise DomainError(f"need at least {size} vertices")
    covered: set[tuple[int, int]] = set()
    adj: list[set[int]] = [set() for _ in range(spec.n)]
    edges: list[tuple[int, ...]] = []
    budget = spec.budget_factor * max(m, 1)
    while len(edges) < m:
        if budget <= 0:
            raise GenerationBudgetExceededError(
                f"girth4 repair budget exhausted at {len(edges)}/{m} edges"
            )
        budget -= 1
        e = _sample_edge(rng, spec.n, size)
        ok = True
        for u, v in combinations(e, 2):
            if (u, v) in covered:
                ok = False  # would create a 2-cycle
                break
            if adj[u] & adj[v]:
                ok = False  # common co-neighbor closes a Berge triangle
                break
        if not ok:
            continue
        edges.append(e)
        for u, v in combinations(e, 2):
            covered.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
    H = validate(edges, spec.n, size)
    if not is_girth4(H):
        raise GenerationBudgetExceededError("girth4 generator produced a short cycle")
    return H


def _gen_triangle_free(spec: FamilySpec, rng: SplitMix64) -> UniformHypergraph:
    """Random bipartite graph: bipartite implies triangle-free."""
    if spec.r != 1:
        raise DomainError("triangle-free-graph is a graph family (r = 1)")
    half = spec.n // 2
    other = spec.n - half
    m = round(spec.target_d * spec.n / 2)
    if m > half * other:
        raise DomainError(f"cannot place {m} cross edges in a {half}x{other} bipartition")
    edges: set[tuple[int, int]] = set()
    budget = spec.budget_factor * max(m, 1)
    while len(edges) < m:
        if budget <= 0:
            raise GenerationBudgetExceededError("bipartite sampling budget exhausted")
        budget -= 1
        a = rng.next_below(half)
        b = half + rng.next_below(other)
        edges.add((a, b))
    H = validate(edges, spec.n, 2)
    if not is_triangle_free(H):
        raise GenerationBudgetExceededError("triangle-free generator failed its checker")
    return H


def _gen_ck_free(spec: FamilySpec, rng: SplitMix64) -> UniformHypergraph:
    if spec.r != 1:
        raise DomainError("ck-free-graph is a graph family (r = 1)")
    k = spec.k
    if k is None:
        raise DomainError("ck-free-graph needs k")
    m = round(spec.target_d * spec.n / 2)
    adj: list[set[int]] = [set() for _ in range(spec.n)]
    edges: set[tuple[int, int]] = set()
    budget = spec.budget_factor * max(m, 1)

    def closes_ck(u: int, v: int) -> bool:
        # adding (u, v) closes a C_k iff a simple u-v path of k-1 edges exists
        def path(a: int, goal: int, length: int, used: set[int]) -> bool:
            if length == 1:
                return goal in adj[a]
            for w in adj[a]:
                if w == goal or w in used:
                    continue
                used.add(w)
                if path(w, goal, length - 1, used):
                    used.discard(w)
                    return True
                used.discard(w)
            return False

        return path(u, v, k - 1, {u, v} - {v})

    while len(edges) < m:
        if budget <= 0:
            raise GenerationBudgetExceededError(
                f"ck-free repair budget exhausted at {len(edges)}/{m} edges"
            )
        budget -= 1
        u = rng.next_below(spec.n)
        v = rng.next_below(spec.n)
        if u == v:
            continue
        if u > v:
            u, v = v, u
        if (u, v) in edges:
            continue
        if closes_ck(u, v):
            continue
        edges.add((u, v))
        adj[u].add(v)
        adj[v].add(u)
    H = validate(edges, spec.n, 2)
    if not is_ck_free(H, k):
        raise GenerationBudgetExceededError("ck-free generator failed its checker")
    return H


def _gen_clique_bounded(spec: FamilySpec, rng: SplitMix64) -> UniformHypergraph:
    if spec.r != 1:
        raise DomainError("clique-bounded is a graph family (r = 1)")
    k = spec.k
    if k is None or k < 2:
        raise DomainError("clique-bounded needs k >= 2")
    m = round(spec.target_d * spec.n / 2)
    adj_mask = [0] * spec.n
    edges: set[tuple[int, int]] = set()
    budget = spec.budget_factor * max(m, 1)

    def common_has_clique(cand: int, size: int) -> bool:
        if size == 0:
            return True
        if cand.bit_count() < size:
            return False
        t = cand
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            if common_has_clique(cand & adj_mask[v] & ~((1 << (v + 1)) - 1), size - 1):
                return True
        return False

    while len(edges) < m:
        if budget <= 0:
            raise GenerationBudgetExceededError(
                f"clique-bounded repair budget exhausted at {len(edges)}/{m} edges"
            )
        budget -= 1
        u = rng.next_below(spec.n)
        v = rng.next_below(spec.n)
        if u == v:
            continue
        if u > v:
            u, v = v, u
        if (u, v) in edges:
            continue
        # adding (u, v) creates a K_{k+1} iff the common neighborhood
        # holds a K_{k-1}
        if common_has_clique(adj_mask[u] & adj_mask[v], k - 1):
            continue
        edges.add((u, v))
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    H = validate(edges, spec.n, 2)
    if not clique_number_at_most(H, k):
        raise GenerationBudgetExceededError("clique-bounded generator failed its checker")
    return H


def _gen_random_regular(spec: FamilySpec, rng: SplitMix64) -> UniformHypergraph:
    """Configuration model: shuffle degree stubs into groups of r+1 and
    reshuffle wholesale until the grouping is simple."""
    d = int(round(spec.target_d))
    if d != spec.target_d:
        raise DomainError("random-regular needs an integer degree")
    size = spec.r + 1
    if (spec.n * d) % size != 0:
        raise DomainError(f"n*d must be divisible by {size} for a {d}-regular instance")
    stubs = [v for v in range(spec.n) for _ in range(d)]
    m = len(stubs) // size
    for _ in range(spec.budget_factor):
        rng.shuffle(stubs)
        groups = [tuple(sorted(stubs[i * size : (i + 1) * size])) for i in range(m)]
        if any(len(set(g)) != size for g in groups):
            continue
        if len(set(groups)) != m:
            continue
        H = validate(groups, spec.n, size)
        prof = degree_profile(H)
        if prof.max_degree == d and min(prof.degrees) == d:
            return H
    raise GenerationBudgetExceededError("random-regular reshuffle budget exhausted")


_GENERATORS = {
    "random-uniform": _gen_random_uniform,
    "girth4-uniform": _gen_girth4_uniform,
    "triangle-free-graph": _gen_triangle_free,
    "ck-free-graph": _gen_ck_free,
    "clique-bounded": _gen_clique_bounded,
    "random-regular": _gen_random_regular,
}


def generate(spec: FamilySpec) -> UniformHypergraph:
    """Generate an instance; the family's checker has already passed."""
    if spec.family not in _GENERATORS:
        raise DomainError(f"unknown family {spec.family!r}; known: {FAMILIES}")
    if spec.n < 1:
        raise DomainError("n must be >= 1")
    if spec.r < 1:
        raise DomainError("r must be >= 1")
    rng = SplitMix64(spec.seed)
    H = _GENERATORS[spec.family](spec, rng)
    if spec.family != "random-regular":
        _check_density(H, spec)
    return H
