"""The degree-cleaning engine.

Starting from the full vertex set, the loop repeatedly deletes a vertex
whose degree exceeds (1 + eta) times the current average degree, stopping
as soon as one of three conditions holds (checked in this order at every
stage, including stage 0):

  S1  the current average degree fell below d / f(d)^b,
  S2  the vertex count fell below n / f(d)^a,
  S3  the maximum degree is within (1 + eta) of the average degree.

The potential Q_i = N_i / D_i^(1/r) is nondecreasing along the run and
its per-step growth factor (1 + c/N_i) is re-verifiable with exact
rational arithmetic; see verify_potential_growth.

Numeric discipline: average degrees are exact rationals end to end; the
S3 predicate and the deletion rule compare exactly (eta enters as the
exact dyadic value of its float); S1 and S2 involve powers of f(d) and
are evaluated in floating point, which is the formula boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import UniformHypergraph
from .errors import (
    DomainError,
    EmptyVertexSetError,
    HypercleanError,
    InadmissibleEtaError,
    MissingDelegateError,
    VerificationFailureError,
)
from .nearlylog import CandidateFunction
from .weighted import VertexWeights, make_weights

STOP_CASES = ("S1", "S2", "S3")
TIE_BREAKS = ("max-degree", "first-eligible")


@dataclass(frozen=True)
class CleaningParameters:
    """The derived parameter schedule.

    eps solves (1-eps)^2 (1+eps)^(-1/r) >= 1-eps0; eta is strictly below
    min(eps, lambda0-1, r/(r+1)); and

        c = (r+1) eta / r,   a = 2/c + 1,   b = 4r + 2r/c,

    which forces the identities a*c - c = 2 and b/r - a = 3.
    """

    eps0: float
    eps: float
    eta: float
    c: float
    a: float
    b: float
    lambda0: float
    r: int

    def to_dict(self) -> dict:
        return {
            "eps0": self.eps0,
            "eps": self.eps,
            "eta": self.eta,
            "c": self.c,
            "a": self.a,
            "b": self.b,
            "lambda0": self.lambda0,
            "r": self.r,
        }


def slack_inequality_lhs(eps: float, r: int) -> float:
    """(1-eps)^2 (1+eps)^(-1/r), the quantity that must stay >= 1-eps0."""
    return (1.0 - eps) ** 2 * (1.0 + eps) ** (-1.0 / r)


def derive_parameters(
    eps0: float,
    r: int,
    eta_override: float | None = None,
    lambda0: float = 2.0,
) -> CleaningParameters:
    """Derive (eps, eta, c, a, b) from the target slack eps0.

    eps is the largest value in (0, 1/2) satisfying the slack inequality,
    found by bisection to 1e-9.  eta defaults to half its admissible
    upper bound; an override must satisfy the strict bound or
    InadmissibleEtaError is raised.
    """
    if not 0.0 < eps0 < 1.0:
        raise DomainError(f"eps0 must be in (0, 1), got {eps0}")
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if lambda0 <= 1.0:
        raise DomainError(f"lambda0 must exceed 1, got {lambda0}")
    target = 1.0 - eps0
    hi_cap = 0.5 - 1e-9  # stay inside the open interval (0, 1/2)
    if slack_inequality_lhs(hi_cap, r) >= target:
        eps = hi_cap
    else:
        lo, hi = 0.0, hi_cap
        while hi - lo > 1e-9:
            mid = 0.5 * (lo + hi)
            if slack_inequality_lhs(mid, r) >= target:
                lo = mid
            else:
                hi = mid
        eps = lo
    eta_bound = min(eps, lambda0 - 1.0, r / (r + 1.0))
    if eta_override is not None:
        if not 0.0 < eta_override < eta_bound:
            raise InadmissibleEtaError(
                f"eta must lie strictly in (0, {eta_bound:.6g}), got {eta_override}"
            )
        eta = eta_override
    else:
        eta = eta_bound / 2.0
    c = (r + 1) * eta / r
    a = 2.0 / c + 1.0
    b = 4.0 * r + 2.0 * r / c
    return CleaningParameters(
        eps0=eps0, eps=eps, eta=eta, c=c, a=a, b=b, lambda0=lambda0, r=r
    )


@dataclass(frozen=True)
class StageRecord:
    """State before step i (the record at i = T is the final state).

    size is the vertex count N_i, or the weight mass mu(U_i) in weighted
    mode; avg_degree is the exact rational D_i; max_degree is an int
    (unweighted) or Fraction (weighted); potential is Q_i, +inf when
    D_i = 0.
    """

    i: int
    size: Fraction
    avg_degree: Fraction
    max_degree: Fraction
    potential: float


@dataclass(frozen=True)
class DeletionRecord:
    """Step i deleted `vertex`, whose (weighted) degree was `degree`.

    mass is the size decrement: 1 unweighted, w(v)^(r+1) weighted.
    """

    i: int
    vertex: int
    degree: Fraction
    mass: Fraction


@dataclass(frozen=True)
class CleaningTranscript:
    params: CleaningParameters
    f_spec: str
    n: int
    d: Fraction
    weighted: bool
    stages: tuple[StageRecord, ...]
    deletions: tuple[DeletionRecord, ...]
    stop_case: str
    survivors: tuple[int, ...]
    diagnostics: dict
    tie_break: str

    @property
    def T(self) -> int:
        return len(self.deletions)

    @property
    def final(self) -> StageRecord:
        return self.stages[-1]

    def to_json_dict(self) -> dict:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)

        def q(x: float) -> float | str:
            return "inf" if math.isinf(x) else x

        steps = []
        for rec in self.deletions:
            st = self.stages[rec.i]
            steps.append(
                {
                    "i": rec.i,
                    "vertex": rec.vertex,
                    "degree": frac(rec.degree),
                    "N": frac(st.size),
                    "D": frac(st.avg_degree),
                    "Delta": frac(st.max_degree),
                    "Q": q(st.potential),
                }
            )
        fin = self.final
        return {
            "params": self.params.to_dict(),
            "f_spec": self.f_spec,
            "n": self.n,
            "d": frac(self.d),
            "weighted": self.weighted,
            "rng": None,
            "tie_break": self.tie_break,
            "steps": steps,
            "final": {
                "N": frac(fin.size),
                "D": frac(fin.avg_degree),
                "Delta": frac(fin.max_degree),
                "Q": q(fin.potential),
            },
            "stop_case": self.stop_case,
            "T": self.T,
            "survivors": list(self.survivors),
            "diagnostics": self.diagnostics,
        }

    def to_json(self, bound_chain: list | None = None) -> str:
        doc = self.to_json_dict()
        if bound_chain is not None:
            doc["bound_chain"] = bound_chain
        return json.dumps(doc, indent=2)


def _potential(size: Fraction, D: Fraction, r: int) -> float:
    if D == 0:
        return math.inf
    return float(size) / float(D) ** (1.0 / r)


def _diagnostics(d: Fraction, f_d: float, params: CleaningParameters) -> dict:
    """Evaluate the asymptotic-regime predicates at the instance's d."""
    r = params.r
    df = float(d)
    d_root_r = df ** (1.0 / r) if df > 0 else 0.0
    d_root_b = df ** (1.0 / params.b) if df > 0 else 0.0
    thr_s1 = df / f_d ** params.b
    p2_lower = f_d > 2.0
    p2_upper = f_d < d_root_b
    p2_quartic = 4.0 * f_d ** (params.a + 1.0) < d_root_r
    ok = p2_lower and p2_upper and p2_quartic
    return {
        "f_at_d": f_d,
        "s1_threshold": thr_s1,
        "s2_threshold": f_d ** params.a,
        "p2_lower_ok": p2_lower,
        "p2_upper_ok": p2_upper,
        "p2_quartic_ok": p2_quartic,
        "p4_delegate_threshold": thr_s1,
        "asymptotic_regime_ok": ok,
    }


def run_cleaning(
    H: UniformHypergraph,
    f: CandidateFunction,
    params: CleaningParameters,
    tie_break: str = "max-degree",
    weights: VertexWeights | None = None,
) -> CleaningTranscript:
    """Run the cleaning loop to one of the stop conditions.

    Deletion policy: among vertices with degree strictly above
    (1 + eta) * D_i, delete one of maximum degree, lowest index first
    ("max-degree"), or simply the lowest eligible index
    ("first-eligible").  In weighted mode the vertex count is replaced
    by the weight mass, the edge count by the weighted edge-mass, and
    degrees by the weighted normalized degrees; the same stop formulas
    apply with d_w in place of d.
    """
    if H.n < 1:
        raise EmptyVertexSetError("cleaning needs at least one vertex")
    if params.r != H.r:
        raise DomainError(f"parameters are for r={params.r}, hypergraph has r={H.r}")
    if tie_break not in TIE_BREAKS:
        raise DomainError(f"unknown tie_break {tie_break!r}")
    weighted = weights is not None
    if weighted and len(weights) != H.n:
        weights = make_weights(weights.w, H.n)  # raises LengthMismatchError

    n, r = H.n, H.r
    m = H.num_edges
    one_plus_eta = 1 + Fraction(params.eta)

    alive = [True] * n
    edge_alive = [True] * m
    incidence: list[list[int]] = [[] for _ in range(n)]
    for ei, e in enumerate(H.edges):
        for v in e:
            incidence[v].append(ei)

    if weighted:
        wv = weights.w
        vmass = [x ** (r + 1) for x in wv]
        emass = []
        for e in H.edges:
            p = Fraction(1)
            for v in e:
                p *= wv[v]
            emass.append(p)
        # deg[v] tracks the numerator sum of edge masses at v; the
        # weighted normalized degree is deg[v] / vmass[v]
        degnum = [Fraction(0)] * n
        for ei, e in enumerate(H.edges):
            for v in e:
                degnum[v] += emass[ei]
        size = sum(vmass, start=Fraction(0))
        edge_total = sum(emass, start=Fraction(0))

        def degree_of(v: int) -> Fraction:
            return degnum[v] / vmass[v]

    else:
        vmass = [Fraction(1)] * n
        emass = [Fraction(1)] * m
        degnum_int = H.degree_sequence()
        size = Fraction(n)
        edge_total = Fraction(m)

        def degree_of(v: int) -> Fraction:
            return Fraction(degnum_int[v])

    total_size = size
    d0 = (r + 1) * edge_total / size
    f_d = f.eval(float(d0))
    if not (f_d > 0.0 and math.isfinite(f_d)):
        raise DomainError(f"f(d) = {f_d} is not a positive finite value")
    thr_s1 = float(d0) / f_d ** params.b
    thr_s2 = f_d ** params.a

    stages: list[StageRecord] = []
    deletions: list[DeletionRecord] = []
    stop_case = None
    i = 0
    while True:
        D = (r + 1) * edge_total / size if size > 0 else Fraction(0)
        delta = Fraction(0)
        for v in range(n):
            if alive[v]:
                dv = degree_of(v)
                if dv > delta:
                    delta = dv
        stages.append(
            StageRecord(
                i=i,
                size=size,
                avg_degree=D,
                max_degree=delta,
                potential=_potential(size, D, r),
            )
        )
        if float(D) < thr_s1:
            stop_case = "S1"
            break
        if float(total_size) / float(size) > thr_s2:
            stop_case = "S2"
            break
        if delta <= one_plus_eta * D:
            stop_case = "S3"
            break

        # no stop condition: a vertex above the deletion threshold exists
        threshold = one_plus_eta * D
        chosen = -1
        if tie_break == "max-degree":
            best = None
            for v in range(n):
                if alive[v]:
                    dv = degree_of(v)
                    if dv > threshold and (best is None or dv > best):
                        best = dv
                        chosen = v
        else:
            for v in range(n):
                if alive[v] and degree_of(v) > threshold:
                    chosen = v
                    break
        if chosen < 0:  # unreachable: delta > threshold guarantees a witness
            raise HypercleanError("internal invariant violated: no deletable vertex")
        # the per-step growth proof needs the current size to exceed
        # (r+1)(1+eta) mass units of the deleted vertex; this cannot fail
        # when a deletable vertex exists, so treat it as a hard check
        if size <= (r + 1) * one_plus_eta * vmass[chosen]:
            raise HypercleanError(
                "internal invariant violated: size too small at a genuine step"
            )

        deg_chosen = degree_of(chosen)
        deletions.append(
            DeletionRecord(i=i, vertex=chosen, degree=deg_chosen, mass=vmass[chosen])
        )
        alive[chosen] = False
        size -= vmass[chosen]
        for ei in incidence[chosen]:
            if edge_alive[ei]:
                edge_alive[ei] = False
                edge_total -= emass[ei]
                for u in H.edges[ei]:
                    if weighted:
                        degnum[u] -= emass[ei]
                    else:
                        degnum_int[u] -= 1
        i += 1

    diagnostics = _diagnostics(d0, f_d, params)
    if weighted:
        diagnostics["weighted_note"] = (
            "crude randomized-deletion bounds in cases S1/S2 apply to the "
            "unweighted support only (heuristic)"
        )
    survivors = tuple(v for v in range(n) if alive[v])
    return CleaningTranscript(
        params=params,
        f_spec=f.spec,
        n=n,
        d=d0,
        weighted=weighted,
        stages=tuple(stages),
        deletions=tuple(deletions),
        stop_case=stop_case,
        survivors=survivors,
        diagnostics=diagnostics,
        tie_break=tie_break,
    )


@dataclass(frozen=True)
class PotentialGrowthReport:
    """Outcome of re-verifying the potential growth along a transcript."""

    steps_checked: int
    final_potential: float
    final_bound: float
    amplification: float  # ((n+1)/(N_T+1))^c, or the weighted product


def verify_potential_growth(t: CleaningTranscript) -> PotentialGrowthReport:
    """Re-verify Q_{i+1} >= (1 + c * mass_i / size_i) * Q_i at every step,
    and the final amplified lower bound on Q_T.

    Per-step checks compare r-th powers of both sides with exact rational
    arithmetic (Q^r = size^r / D), treating Q = +inf as satisfying every
    lower bound.  The final closed-form bound
    Q_T >= ((n+1)/(N_T+1))^c * n / d^(1/r) involves the real exponent c
    and is checked in floating point to relative 1e-12; in weighted mode
    the telescoped product of the per-step factors replaces the closed
    form.  Raises VerificationFailureError with the offending step.
    """
    r = t.params.r
    c = Fraction(t.params.c)
    for idx in range(t.T):
        pre = t.stages[idx]
        post = t.stages[idx + 1]
        rec = t.deletions[idx]
        if pre.avg_degree == 0:
            raise VerificationFailureError(
                f"step {idx}: a genuine step from an edgeless state", step=idx
            )
        if post.avg_degree == 0:
            continue  # Q_{i+1} = +inf satisfies any lower bound
        gain = 1 + c * rec.mass / pre.size
        lhs = post.size ** r / post.avg_degree
        rhs = gain ** r * (pre.size ** r / pre.avg_degree)
        if lhs < rhs:
            raise VerificationFailureError(
                f"step {idx}: potential grew by less than the required factor",
                step=idx,
            )

    fin = t.final
    q_t = fin.potential
    if t.weighted:
        amplification = 1.0
        for idx in range(t.T):
            amplification *= 1.0 + t.params.c * float(
                Fraction(t.deletions[idx].mass) / t.stages[idx].size
            )
    else:
        amplification = ((t.n + 1) / (float(fin.size) + 1.0)) ** t.params.c
    q_0 = t.stages[0].potential
    final_bound = amplification * q_0
    tol = 1.0 - 1e-12
    if not math.isinf(q_t):
        if q_t < final_bound * tol:
            raise VerificationFailureError(
                "final potential below the amplified starting bound", step=None
            )
        if q_t < q_0 * tol:
            raise VerificationFailureError(
                "final potential below the starting potential", step=None
            )
    return PotentialGrowthReport(
        steps_checked=t.T,
        final_potential=q_t,
        final_bound=final_bound,
        amplification=amplification,
    )


# --- three-case analysis ----------------------------------------------------

VERIFIED = "verified"
ASYMPTOTIC = "asymptotic"
CONDITIONAL = "conditional"


@dataclass(frozen=True)
class ChainLink:
    """One inequality of the case analysis, instantiated with run numbers.

    status records how much the link is worth: "verified" means checked
    numerically at this instance, "asymptotic" means it is only
    guaranteed for d beyond an existential threshold, "conditional"
    means it rests on the delegate's declared guarantee.
    """

    label: str
    lhs: float
    rhs: float
    holds: bool
    status: str

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "status": self.status,
        }


@dataclass(frozen=True)
class CaseAnalysis:
    case: int
    stop_case: str
    certified_size: float
    paper_bound: float
    bound_chain: tuple[ChainLink, ...]
    asymptotic_ok: bool
    notes: tuple[str, ...]

    def chain_dicts(self) -> list[dict]:
        return [link.to_dict() for link in self.bound_chain]


def _link(label: str, lhs: float, rhs: float, status: str) -> ChainLink:
    return ChainLink(label=label, lhs=lhs, rhs=rhs, holds=bool(lhs >= rhs), status=status)


def stop_case_analysis(
    t: CleaningTranscript,
    f: CandidateFunction,
    alpha_crude: int | None = None,
    alpha_maxdeg: int | None = None,
) -> CaseAnalysis:
    """Instantiate the three-case bound chain with the run's numbers.

    alpha_crude is the realized randomized-deletion size on the stopped
    hypergraph (cases 1 and 2); alpha_maxdeg the delegate's size
    (case 3, where it is required).  Every inequality carries a status
    flag; the headline average-degree bound is asymptotic whenever the
    instance's d misses the regime predicates.
    """
    p = t.params
    r = p.r
    n = float(t.n)
    d = float(t.d)
    f_d = t.diagnostics["f_at_d"]
    fin = t.final
    n_t = float(fin.size)
    d_t = float(fin.avg_degree)
    d_root = d ** (1.0 / r) if d > 0 else 0.0
    target = f_d / d_root * n if d_root > 0 else math.inf
    notes: list[str] = []
    if t.weighted:
        notes.append(t.diagnostics.get("weighted_note", "weighted mode"))
    if not t.diagnostics["asymptotic_regime_ok"]:
        notes.append("asymptotic-regime unmet at this d")

    chain: list[ChainLink] = []
    if t.stop_case == "S1":
        case = 1
        if alpha_crude is None:
            raise MissingDelegateError("case 1 needs the realized crude-bound size")
        chain.append(
            ChainLink(
                label="stop: D_T < d/f(d)^b",
                lhs=d_t,
                rhs=t.diagnostics["s1_threshold"],
                holds=d_t < t.diagnostics["s1_threshold"],
                status=VERIFIED,
            )
        )
        chain.append(
            _link(
                "survivor count: N_T >= n/(2 f(d)^a)",
                n_t,
                n / (2.0 * f_d ** p.a),
                VERIFIED,
            )
        )
        if d_t >= 1.0:
            crude = r / (r + 1.0) * n_t / d_t ** (1.0 / r)
            chain.append(
                _link("realized deletion size >= crude bound", alpha_crude, crude, VERIFIED)
            )
            chain.append(
                _link(
                    "crude bound amplifies: r/(2(r+1)) f(d)^2 >= 1",
                    r / (2.0 * (r + 1.0)) * f_d ** 2,
                    1.0,
                    ASYMPTOTIC,
                )
            )
        else:
            crude = r / (r + 1.0) * n_t
            chain.append(
                _link("realized deletion size >= crude bound", alpha_crude, crude, VERIFIED)
            )
            chain.append(
                _link(
                    "sparse case amplifies: r/(2(r+1)) d^(1/r)/f(d)^(a+1) >= 1",
                    r / (2.0 * (r + 1.0)) * d_root / f_d ** (p.a + 1.0),
                    1.0,
                    ASYMPTOTIC,
                )
            )
        chain.append(_link("headline: alpha(H) >= f(d)/d^(1/r) n", alpha_crude, target, ASYMPTOTIC))
        certified = float(alpha_crude)
    elif t.stop_case == "S2":
        case = 2
        if alpha_crude is None:
            raise MissingDelegateError("case 2 needs the realized crude-bound size")
        chain.append(
            ChainLink(
                label="stop: n/N_T > f(d)^a",
                lhs=n / n_t,
                rhs=t.diagnostics["s2_threshold"],
                holds=n / n_t > t.diagnostics["s2_threshold"],
                status=VERIFIED,
            )
        )
        chain.append(
            _link("S1 failed: D_T >= d/f(d)^b", d_t, t.diagnostics["s1_threshold"], VERIFIED)
        )
        chain.append(
            ChainLink(
                label="dense enough: D_T > 1",
                lhs=d_t,
                rhs=1.0,
                holds=d_t > 1.0,
                status=ASYMPTOTIC,
            )
        )
        q_amp = ((t.n + 1) / (n_t + 1.0)) ** p.c
        q_bound = q_amp * n / d_root if d_root > 0 else math.inf
        chain.append(
            _link("potential growth: Q_T >= ((n+1)/(N_T+1))^c n/d^(1/r)", fin.potential, q_bound, VERIFIED)
        )
        crude = r / (r + 1.0) * n_t / d_t ** (1.0 / r) if d_t > 0 else r / (r + 1.0) * n_t
        chain.append(
            _link("realized deletion size >= crude bound", alpha_crude, crude, VERIFIED)
        )
        chain.append(
            _link(
                "amplification: r/(r+1) 2^-c f(d)^(c+1) >= 1",
                r / (r + 1.0) * 2.0 ** (-p.c) * f_d ** (p.c + 1.0),
                1.0,
                ASYMPTOTIC,
            )
        )
        chain.append(_link("headline: alpha(H) >= f(d)/d^(1/r) n", alpha_crude, target, ASYMPTOTIC))
        certified = float(alpha_crude)
    else:
        case = 3
        if alpha_maxdeg is None:
            raise MissingDelegateError("case 3 needs a max-degree delegate result")
        delta_t = float(fin.max_degree)
        chain.append(
            _link("sandwich: Delta_T >= d/f(d)^b", delta_t, t.diagnostics["s1_threshold"], VERIFIED)
        )
        chain.append(
            ChainLink(
                label="sandwich: Delta_T <= (1+eta) D_T",
                lhs=delta_t,
                rhs=(1.0 + p.eta) * d_t,
                holds=delta_t <= (1.0 + p.eta) * d_t,
                status=VERIFIED,
            )
        )
        if delta_t > 0:
            guarantee = (1.0 - p.eps) * f.eval(delta_t) / delta_t ** (1.0 / r) * n_t
            chain.append(
                _link(
                    "delegate guarantee: alpha(H_T) >= (1-eps) f(Delta_T)/Delta_T^(1/r) N_T",
                    alpha_maxdeg,
                    guarantee,
                    CONDITIONAL,
                )
            )
            chain.append(
                _link(
                    "window stability: f(Delta_T) >= (1-eps) f(d)",
                    f.eval(delta_t),
                    (1.0 - p.eps) * f_d,
                    VERIFIED,
                )
            )
        chain.append(
            _link(
                "potential: N_T/D_T^(1/r) >= n/d^(1/r)",
                fin.potential,
                n / d_root if d_root > 0 else 0.0,
                VERIFIED,
            )
        )
        eps_target = (1.0 - p.eps) ** 2 * (1.0 + p.eta) ** (-1.0 / r)
        chain.append(
            _link(
                "slack choice: (1-eps)^2 (1+eta)^(-1/r) >= 1-eps0",
                eps_target,
                1.0 - p.eps0,
                VERIFIED,
            )
        )
        chain.append(
            _link(
                "headline: alpha(H) >= (1-eps0) f(d)/d^(1/r) n",
                alpha_maxdeg,
                (1.0 - p.eps0) * target,
                CONDITIONAL,
            )
        )
        notes.append("case-3 claims are conditional on the delegate guarantee")
        certified = float(alpha_maxdeg)

    asymptotic_ok = t.diagnostics["asymptotic_regime_ok"] and all(
        link.holds for link in chain if link.status == ASYMPTOTIC
    )
    return CaseAnalysis(
        case=case,
        stop_case=t.stop_case,
        certified_size=certified,
        paper_bound=target,
        bound_chain=tuple(chain),
        asymptotic_ok=asymptotic_ok,
        notes=tuple(notes),
    )
