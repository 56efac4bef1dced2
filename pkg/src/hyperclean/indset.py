"""Independent-set constructors and exact oracles.

Everything returns an IndependentSetCertificate whose membership can be
re-checked against the host hypergraph in O(e * (r+1)).  Randomized
routines draw splitmix64 bits (see hyperclean.rng) so results replay
bit-exactly; exact oracles are capped and raise InstanceTooLargeError
beyond their caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import _backend
from .cleaning import CaseAnalysis, CleaningParameters, CleaningTranscript, run_cleaning, stop_case_analysis
from .core import UniformHypergraph, degree_profile, induce
from .errors import (
    EmptyVertexSetError,
    InstanceTooLargeError,
    MissingDelegateError,
    VerificationFailureError,
)
from .nearlylog import CandidateFunction
from .rng import RNG_ALGORITHM, derive_seed
from .weighted import VertexWeights, weighted_alpha_star

EXACT_ALPHA_CAP = 24
ENUM_ALPHA_CAP = 14
HALL_RATIO_CAP = 16
WEIGHTED_ALPHA_CAP = 20


@dataclass(frozen=True)
class IndependentSetCertificate:
    """A vertex set with a machine-checkable independence claim.

    claimed_bound, when present, is a lower-bound value whose provenance
    string says where it came from (an expectation, a delegate
    guarantee, or exactness).
    """

    members: tuple[int, ...]
    verified: bool
    method: str
    claimed_bound: float | None = None
    provenance: str | None = None
    seed: int | None = None
    rng: str | None = None

    @property
    def size(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        doc = {
            "members": list(self.members),
            "size": self.size,
            "verified": self.verified,
            "method": self.method,
        }
        if self.claimed_bound is not None:
            doc["claimed_bound"] = self.claimed_bound
            doc["claimed_bound_provenance"] = self.provenance
        if self.seed is not None:
            doc["seed"] = self.seed
            doc["rng"] = self.rng
        return doc


def verify_certificate(H: UniformHypergraph, members) -> bool:
    """Independent re-check: no edge of H lies inside `members`."""
    return H.is_independent(members)


@dataclass(frozen=True)
class DelegateGuarantee:
    """Descriptor of a max-degree guarantee: for Delta(F) >= delta0 the
    delegate returns at least (1 - eps) f(Delta) / Delta^(1/r) |V(F)|."""

    f_spec: str
    eps: float
    delta0: float


@dataclass(frozen=True)
class MaxDegDelegate:
    """A black-box max-degree solver; outputs are always re-verified."""

    name: str
    solve: Callable[[UniformHypergraph], IndependentSetCertificate]
    guarantee: DelegateGuarantee | None = None


def _flat_edges(H: UniformHypergraph) -> list[int]:
    flat: list[int] = []
    for e in H.edges:
        flat.extend(e)
    return flat


def _edge_masks(H: UniformHypergraph) -> list[int]:
    masks = []
    for e in H.edges:
        m = 0
        for v in e:
            m |= 1 << v
        masks.append(m)
    return masks


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def deletion_probability(H: UniformHypergraph) -> float:
    """p = min(1, d^(-1/r)); edgeless hypergraphs keep everything (p = 1)."""
    if H.n < 1:
        raise EmptyVertexSetError("need at least one vertex")
    d = degree_profile(H).avg_degree
    if d == 0:
        return 1.0
    return min(1.0, float(d) ** (-1.0 / H.r))


def random_deletion(H: UniformHypergraph, seed: int) -> IndependentSetCertificate:
    """Randomized deletion: keep each vertex with probability p, then
    drop the lowest-index vertex of every fully kept edge.

    The expected size is at least r/(r+1) * p * n, which is recorded as
    the claimed bound.  Deterministic given the seed.
    """
    p = deletion_probability(H)
    members, ok = _backend.random_deletion_members(
        H.n, H.uniformity, _flat_edges(H), p, seed
    )
    if not ok:
        raise VerificationFailureError("randomized deletion left a full edge")
    expected = H.r / (H.r + 1.0) * p * H.n
    return IndependentSetCertificate(
        members=tuple(members),
        verified=verify_certificate(H, members),
        method="randomized-deletion",
        claimed_bound=expected,
        provenance="expected size r/(r+1) p n of the randomized deletion",
        seed=seed,
        rng=RNG_ALGORITHM,
    )


def random_deletion_sizes(
    H: UniformHypergraph, master_seed: int, trials: int
) -> tuple[list[int], bool]:
    """Sizes of `trials` randomized-deletion runs (Monte-Carlo batches).

    Trial i uses derive_seed(master_seed, i); the boolean reports that
    every sampled set re-verified as independent.
    """
    p = deletion_probability(H)
    return _backend.mc_random_deletion(
        H.n, H.uniformity, _flat_edges(H), p, master_seed, trials
    )


def greedy_independent_set(H: UniformHypergraph) -> IndependentSetCertificate:
    """Minimum-degree greedy with shrinking edges.

    Repeatedly takes an undecided vertex of minimum degree (ties to the
    lowest index) into the set.  Edges shrink as their vertices are
    taken; when a single vertex of an edge remains undecided it becomes
    forbidden, and every edge through a forbidden vertex can never be
    completed, so those edges die.
    """
    n = H.n
    m = H.num_edges
    UNDECIDED, IN_SET, FORBIDDEN = 0, 1, 2
    state = [UNDECIDED] * n
    edge_alive = [True] * m
    remaining = [H.uniformity] * m  # vertices of the edge not yet in the set
    deg = [0] * n
    incidence: list[list[int]] = [[] for _ in range(n)]
    for ei, e in enumerate(H.edges):
        for v in e:
            incidence[v].append(ei)
            deg[v] += 1

    def kill_edges_at(w: int) -> None:
        for ei in incidence[w]:
            if edge_alive[ei]:
                edge_alive[ei] = False
                for u in H.edges[ei]:
                    if state[u] == UNDECIDED:
                        deg[u] -= 1

    members = []
    undecided = n
    while undecided > 0:
        best_v = -1
        best_d = None
        for v in range(n):
            if state[v] == UNDECIDED and (best_d is None or deg[v] < best_d):
                best_d = deg[v]
                best_v = v
        v = best_v
        state[v] = IN_SET
        undecided -= 1
        members.append(v)
        for ei in incidence[v]:
            if edge_alive[ei]:
                remaining[ei] -= 1
                if remaining[ei] == 1:
                    for u in H.edges[ei]:
                        if state[u] == UNDECIDED:
                            state[u] = FORBIDDEN
                            undecided -= 1
                            kill_edges_at(u)
                            break
    members.sort()
    return IndependentSetCertificate(
        members=tuple(members),
        verified=verify_certificate(H, members),
        method="greedy-min-degree",
    )


greedy_delegate = MaxDegDelegate(
    name="greedy-min-degree",
    solve=greedy_independent_set,
    guarantee=None,
)


def _exact_order(H: UniformHypergraph) -> list[int]:
    deg = H.degree_sequence()
    return sorted(range(H.n), key=lambda v: (-deg[v], v))


def exact_alpha(
    H: UniformHypergraph, cap: int = EXACT_ALPHA_CAP
) -> tuple[int, IndependentSetCertificate]:
    """Exact independence number by branch and bound.

    Starts from the greedy incumbent, branches on vertices in
    degree-descending order, and prunes with remaining-count and
    degree-sum bounds.  Cross-checked against exact_alpha_enum in the
    test suite.
    """
    if H.n > cap:
        raise InstanceTooLargeError(f"n = {H.n} exceeds the cap {cap}")
    if H.n == 0:
        cert = IndependentSetCertificate(members=(), verified=True, method="exact")
        return 0, cert
    greedy = greedy_independent_set(H)
    g_mask = 0
    for v in greedy.members:
        g_mask |= 1 << v
    best, best_mask = _backend.bnb_alpha(
        H.n, _edge_masks(H), _exact_order(H), greedy.size, g_mask
    )
    members = _mask_members(best_mask)
    cert = IndependentSetCertificate(
        members=members,
        verified=verify_certificate(H, members),
        method="exact",
        claimed_bound=float(best),
        provenance="branch-and-bound optimum",
    )
    return best, cert


def exact_alpha_enum(
    H: UniformHypergraph, cap: int = ENUM_ALPHA_CAP
) -> tuple[int, IndependentSetCertificate]:
    """Exact independence number by full subset enumeration (the
    independent cross-check oracle for exact_alpha)."""
    if H.n > cap:
        raise InstanceTooLargeError(f"n = {H.n} exceeds the cap {cap}")
    best, best_mask = _backend.enum_alpha(H.n, _edge_masks(H))
    members = _mask_members(best_mask)
    cert = IndependentSetCertificate(
        members=members,
        verified=verify_certificate(H, members),
        method="exact-enumeration",
        claimed_bound=float(best),
        provenance="full subset enumeration",
    )
    return best, cert


def exact_alpha_weighted(
    H: UniformHypergraph, weights: VertexWeights, cap: int = WEIGHTED_ALPHA_CAP
) -> tuple[Fraction, IndependentSetCertificate]:
    """Maximum of sum w(v)^(r+1) over independent sets, exactly.

    Plain include/exclude search with a remaining-mass bound; weights
    stay rational throughout.
    """
    if H.n > cap:
        raise InstanceTooLargeError(f"n = {H.n} exceeds the cap {cap}")
    n, r = H.n, H.r
    mass = [weights[v] ** (r + 1) for v in range(n)]
    suffix = [Fraction(0)] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + mass[v]
    vert_edges: list[list[int]] = [[] for _ in range(n)]
    masks = _edge_masks(H)
    for em in masks:
        mm = em
        while mm:
            v = (mm & -mm).bit_length() - 1
            vert_edges[v].append(em)
            mm &= mm - 1

    best = Fraction(0)
    best_mask = 0

    def rec(v: int, imask: int, value: Fraction) -> None:
        nonlocal best, best_mask
        if value + suffix[v] <= best:
            return
        if v == n:
            best = value
            best_mask = imask
            return
        bit = 1 << v
        can = True
        for em in vert_edges[v]:
            if em & ~(imask | bit) == 0:
                can = False
                break
        if can:
            rec(v + 1, imask | bit, value + mass[v])
        rec(v + 1, imask, value)

    rec(0, 0, Fraction(0))
    members = _mask_members(best_mask)
    value = weighted_alpha_star(H, weights, members)
    cert = IndependentSetCertificate(
        members=members,
        verified=verify_certificate(H, members),
        method="exact-weighted",
        claimed_bound=float(value),
        provenance="weighted branch-and-bound optimum",
    )
    return value, cert


def hall_ratio_exact(G: UniformHypergraph, cap: int = HALL_RATIO_CAP) -> Fraction:
    """Hall ratio max |U| / alpha(G[U]) over nonempty vertex subsets.

    Graphs only (r = 1).  The maximum over arbitrary subgraphs is
    attained at induced subgraphs because removing edges can only
    increase alpha, so scanning induced subgraphs is exhaustive.
    """
    if G.r != 1:
        raise InstanceTooLargeError("hall ratio oracle requires a graph (r = 1)")
    if G.n == 0:
        raise EmptyVertexSetError("hall ratio undefined on the empty graph")
    if G.n > cap:
        raise InstanceTooLargeError(f"n = {G.n} exceeds the cap {cap}")
    closed = [1 << v for v in range(G.n)]
    for u, v in G.edges:
        closed[u] |= 1 << v
        closed[v] |= 1 << u
    table = _backend.alpha_subset_table(G.n, closed)
    best = Fraction(0)
    for mask in range(1, 1 << G.n):
        ratio = Fraction(mask.bit_count(), table[mask])
        if ratio > best:
            best = ratio
    return best


@dataclass(frozen=True)
class TransferResult:
    """Outcome of the cleaning transfer: a certificate for the original
    hypergraph, the cleaning transcript, and the case analysis."""

    certificate: IndependentSetCertificate
    transcript: CleaningTranscript
    analysis: CaseAnalysis

    def to_dict(self) -> dict:
        doc = self.certificate.to_dict()
        doc["stop_case"] = self.transcript.stop_case
        doc["T"] = self.transcript.T
        doc["case"] = self.analysis.case
        doc["paper_bound"] = self.analysis.paper_bound
        doc["asymptotic_ok"] = self.analysis.asymptotic_ok
        doc["notes"] = list(self.analysis.notes)
        doc["bound_chain"] = self.analysis.chain_dicts()
        return doc


def transfer_alpha(
    H: UniformHypergraph,
    f: CandidateFunction,
    params: CleaningParameters,
    delegate: MaxDegDelegate | None = None,
    seed: int = 0,
    trials: int = 32,
    tie_break: str = "max-degree",
) -> TransferResult:
    """Average-degree independent set via cleaning plus a solver.

    Runs the cleaning loop; on stops S1/S2 takes the best of `trials`
    randomized deletions on the stopped hypergraph (trial j is seeded
    with derive_seed(seed, j)), on S3 delegates to the max-degree
    solver.  Members are mapped back through the retained index map and
    re-verified against the original hypergraph.
    """
    transcript = run_cleaning(H, f, params, tie_break=tie_break)
    sub, kept = induce(H, transcript.survivors)
    if transcript.stop_case in ("S1", "S2"):
        best_members: list[int] | None = None
        best_seed = 0
        p = deletion_probability(sub)
        flat = _flat_edges(sub)
        for j in range(trials):
            s = derive_seed(seed, j)
            members, ok = _backend.random_deletion_members(
                sub.n, sub.uniformity, flat, p, s
            )
            if not ok:
                raise VerificationFailureError("randomized deletion left a full edge")
            if best_members is None or len(members) > len(best_members):
                best_members = members
                best_seed = s
        assert best_members is not None
        mapped = tuple(sorted(kept[v] for v in best_members))
        verified = verify_certificate(H, mapped)
        if not verified:
            raise VerificationFailureError("mapped certificate failed re-verification")
        analysis = stop_case_analysis(transcript, f, alpha_crude=len(best_members))
        certificate = IndependentSetCertificate(
            members=mapped,
            verified=verified,
            method="transfer/randomized-deletion",
            claimed_bound=analysis.certified_size,
            provenance=f"best of {trials} randomized deletions on the stopped hypergraph",
            seed=best_seed,
            rng=RNG_ALGORITHM,
        )
    else:
        if delegate is None:
            raise MissingDelegateError(
                "cleaning stopped in the max-degree case (S3) and no delegate was given"
            )
        inner = delegate.solve(sub)
        if not verify_certificate(sub, inner.members):
            raise VerificationFailureError("delegate returned a dependent set")
        mapped = tuple(sorted(kept[v] for v in inner.members))
        verified = verify_certificate(H, mapped)
        if not verified:
            raise VerificationFailureError("mapped certificate failed re-verification")
        analysis = stop_case_analysis(transcript, f, alpha_maxdeg=inner.size)
        certificate = IndependentSetCertificate(
            members=mapped,
            verified=verified,
            method=f"transfer/delegate:{delegate.name}",
            claimed_bound=analysis.certified_size,
            provenance="delegate output on the stopped hypergraph",
            seed=inner.seed,
            rng=inner.rng,
        )
    return TransferResult(certificate=certificate, transcript=transcript, analysis=analysis)
