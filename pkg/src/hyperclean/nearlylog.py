"""Candidate growth functions and the nearly-logarithmic classifier.

A positive function qualifies as nearly logarithmic when it grows
sub-polynomially with tail values above 2, and varies slowly over
multiplicative windows [x * f(x)^-m, lambda * x].  The classifier probes
a geometric grid of x values and combines three kinds of numeric
evidence:

* local exponents d(log f)/d(log x) between consecutive probes,
  extrapolated to x -> infinity against u = 1/log x;
* the growth index A(x) = x f'(x)/f(x) * log f(x), whose decay to 0 is
  the sufficient differential criterion for slow variation;
* direct window infima inf f(y)/f(x) for the probed (eps, m) pairs.

Any finite probe set is a sample.  The report records exactly which
probes, pairs, and thresholds were used and claims nothing beyond them.
Raw values of genuinely slow-growing functions are not tiny at
desk-scale x (<= 1e12), so the trend tests extrapolate rather than
thresholding the final raw value; the thresholds below were chosen so
the catalog's analytically known verdicts are reproduced.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, ParseError

_E = math.e
_EE = math.exp(math.e)  # clamp point for the log log based entries

# loglog is lifted by a constant so desk-scale probes sit above the
# liminf threshold 2; an additive constant does not affect any of the
# classification conditions.
LOGLOG_OFFSET = 1.5


@dataclass(frozen=True)
class CandidateFunction:
    """A growth function with derivative access.

    Catalog entries carry analytic derivatives; user expressions fall
    back to central differences.  ``eval`` must be positive for all
    x > 0 (catalog entries are clamped below a bounded interval to
    arrange this).
    """

    spec: str
    kind: str
    param: float | None
    eval: Callable[[float], float]
    deriv: Callable[[float], float] | None = None
    probe_floor: float = 2.0
    analytic_verdict: str | None = None

    def __call__(self, x: float) -> float:
        return self.eval(x)


CENTRAL_DIFF_REL_STEP = 1e-6


def central_difference(f: Callable[[float], float], x: float) -> float:
    """Symmetric difference quotient with relative step h = x * 1e-6."""
    h = x * CENTRAL_DIFF_REL_STEP
    return (f(x + h) - f(x - h)) / (2.0 * h)


def derivative_at(fn: CandidateFunction, x: float) -> float:
    if fn.deriv is not None:
        return fn.deriv(x)
    return central_difference(fn.eval, x)


# --- catalog ----------------------------------------------------------------


def _make_log() -> CandidateFunction:
    return CandidateFunction(
        spec="log",
        kind="log",
        param=None,
        eval=lambda x: math.log(max(x, _E)),
        deriv=lambda x: 0.0 if x < _E else 1.0 / x,
        analytic_verdict="pass",
    )


def _make_logpow(beta: float) -> CandidateFunction:
    if beta <= 0:
        raise ParseError("logpow exponent must be positive")
    return CandidateFunction(
        spec=f"logpow:{beta:g}",
        kind="log-power",
        param=beta,
        eval=lambda x: math.log(max(x, _E)) ** beta,
        deriv=lambda x: 0.0 if x < _E else beta * math.log(x) ** (beta - 1.0) / x,
        analytic_verdict="pass",
    )


def _make_logoverloglog() -> CandidateFunction:
    def ev(x: float) -> float:
        t = max(x, _EE)
        return math.log(t) / math.log(math.log(t))

    def dv(x: float) -> float:
        if x < _EE:
            return 0.0
        ll = math.log(math.log(x))
        return (ll - 1.0) / (x * ll * ll)

    return CandidateFunction(
        spec="logoverloglog",
        kind="log-over-loglog",
        param=None,
        eval=ev,
        deriv=dv,
        analytic_verdict="pass",
    )


def _make_loglog() -> CandidateFunction:
    return CandidateFunction(
        spec="loglog",
        kind="loglog",
        param=None,
        eval=lambda x: math.log(math.log(max(x, _EE))) + LOGLOG_OFFSET,
        deriv=lambda x: 0.0 if x < _EE else 1.0 / (x * math.log(x)),
        analytic_verdict="pass",
    )


def _make_exploga(alpha: float) -> CandidateFunction:
    if alpha <= 0:
        raise ParseError("exploga exponent must be positive")

    def ev(x: float) -> float:
        return math.exp(math.log(max(x, _E)) ** alpha)

    def dv(x: float) -> float:
        if x < _E:
            return 0.0
        return ev(x) * alpha * math.log(x) ** (alpha - 1.0) / x

    return CandidateFunction(
        spec=f"exploga:{alpha:g}",
        kind="exp-log-power",
        param=alpha,
        eval=ev,
        deriv=dv,
        analytic_verdict="pass" if alpha < 0.5 else "fail",
    )


def _make_pow(gamma: float) -> CandidateFunction:
    if gamma <= 0:
        raise ParseError("pow exponent must be positive")
    return CandidateFunction(
        spec=f"pow:{gamma:g}",
        kind="power",
        param=gamma,
        eval=lambda x: x ** gamma,
        deriv=lambda x: gamma * x ** (gamma - 1.0),
        analytic_verdict="fail",
    )


def _make_const(c: float) -> CandidateFunction:
    if c <= 0:
        raise ParseError("constant must be positive")
    return CandidateFunction(
        spec=f"const:{c:g}",
        kind="constant",
        param=c,
        eval=lambda x: c,
        deriv=lambda x: 0.0,
        analytic_verdict="pass" if c > 2 else "fail",
    )


_ALLOWED_CALLS = {"log": math.log, "exp": math.exp, "sqrt": math.sqrt}
_ALLOWED_NODES = (
    ast.Expression,
    ast.BinOp,
    ast.UnaryOp,
    ast.Add,
    ast.Sub,
    ast.Mult,
    ast.Div,
    ast.Pow,
    ast.USub,
    ast.UAdd,
    ast.Constant,
    ast.Name,
    ast.Call,
    ast.Load,
)


def _make_expr(text: str) -> CandidateFunction:
    """Tiny arithmetic grammar over x, log, exp, sqrt, + - * / ** and parens."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad expression {text!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ParseError(f"disallowed syntax in expression: {type(node).__name__}")
        if isinstance(node, ast.Name) and node.id != "x" and node.id not in _ALLOWED_CALLS:
            raise ParseError(f"unknown name {node.id!r} in expression")
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _ALLOWED_CALLS:
                raise ParseError("only log/exp/sqrt calls are allowed")
    code = compile(tree, "<fn>", "eval")

    def ev(x: float) -> float:
        return float(eval(code, {"__builtins__": {}}, {"x": x, **_ALLOWED_CALLS}))

    return CandidateFunction(
        spec=f"expr:{text}", kind="user-expression", param=None, eval=ev, deriv=None
    )


def parse_fn_spec(spec: str) -> CandidateFunction:
    """Grammar: log | logpow:<b> | logoverloglog | loglog | exploga:<a> |
    pow:<g> | const:<c> | expr:<expression>."""
    spec = spec.strip()
    head, _, arg = spec.partition(":")
    try:
        if head == "log" and not arg:
            return _make_log()
        if head == "logpow":
            return _make_logpow(float(arg))
        if head == "logoverloglog" and not arg:
            return _make_logoverloglog()
        if head == "loglog" and not arg:
            return _make_loglog()
        if head == "exploga":
            return _make_exploga(float(arg))
        if head == "pow":
            return _make_pow(float(arg))
        if head == "const":
            return _make_const(float(arg))
        if head == "expr":
            return _make_expr(arg)
    except ValueError:
        raise ParseError(f"bad numeric parameter in {spec!r}") from None
    raise ParseError(f"unknown function spec {spec!r}")


# --- pointwise operations ---------------------------------------------------


def growth_index(fn: CandidateFunction, x: float) -> float:
    """x f'(x)/f(x) * log f(x), defined when x is probeable and f(x) > 1."""
    if x <= fn.probe_floor:
        raise DomainError(f"x = {x} is at or below the probe floor {fn.probe_floor}")
    fx = fn.eval(x)
    if fx <= 1.0:
        raise DomainError(f"f(x) = {fx} <= 1, log f(x) not positive")
    return x * derivative_at(fn, x) / fx * math.log(fx)


def window_infimum(
    fn: CandidateFunction, x: float, m: float, lam: float, grid: int = 512
) -> float:
    """Minimum of f(y)/f(x) over a geometric grid on [x f(x)^-m, lam x].

    Endpoints are included; `grid` points total.
    """
    if grid < 2:
        raise DomainError("grid must have at least 2 points")
    if lam <= 1.0:
        raise DomainError("lambda must exceed 1")
    if m < 0:
        raise DomainError("m must be nonnegative")
    if x <= 0:
        raise DomainError("x must be positive")
    fx = fn.eval(x)
    if fx <= 0 or not math.isfinite(fx):
        raise DomainError(f"f(x) = {fx} not a positive finite value")
    lo = x * fx ** (-m)
    hi = lam * x
    if lo <= 0 or not math.isfinite(lo):
        raise DomainError("left endpoint underflowed")
    if lo > hi:
        raise DomainError("empty window: x f(x)^-m exceeds lambda x")
    ratio = math.log(hi / lo)
    best = math.inf
    for k in range(grid):
        y = lo * math.exp(ratio * k / (grid - 1))
        val = fn.eval(y) / fx
        if val < best:
            best = val
    return best


# --- classification ---------------------------------------------------------


@dataclass(frozen=True)
class ProbeConfig:
    """Probe grid and thresholds for classify().

    Decades run geometrically from 10**decade_lo to 10**decade_hi.
    eps_m_pairs are the (eps, m) pairs for the direct window evidence,
    evaluated on the tail probes.
    """

    decade_lo: float = 2.0
    decade_hi: float = 12.0
    points: int = 11
    eps_m_pairs: tuple[tuple[float, float], ...] = ((0.2, 0.0), (0.2, 1.0), (0.2, 2.0))
    lam: float = 2.0
    grid: int = 512
    eps_trend: float = 0.05
    sigma_min: float = 0.15
    tail: int = 3
    liminf_floor: float = 2.0

    def probes(self) -> tuple[float, ...]:
        if self.points < 2:
            raise DomainError("need at least 2 probes")
        step = (self.decade_hi - self.decade_lo) / (self.points - 1)
        return tuple(10.0 ** (self.decade_lo + k * step) for k in range(self.points))


@dataclass(frozen=True)
class TrendEvidence:
    """Least-squares extrapolation of a sampled quantity against 1/log x."""

    values: tuple[float, ...]
    fit_slope: float
    limit_estimate: float
    ok: bool


@dataclass(frozen=True)
class IndexEvidence:
    """Growth-index samples and their tail decay diagnosis."""

    values: tuple[float | None, ...]
    final: float | None
    decay_rate: float | None  # d log A / d log(1/log x) over the tail
    ok: bool
    note: str


@dataclass(frozen=True)
class WindowEvidence:
    """Direct window infima for each probed (eps, m) pair at tail probes."""

    rows: tuple[tuple[float, float, float | None], ...]  # (x, m, infimum)
    pairs: tuple[tuple[float, float], ...]
    ok: bool


@dataclass(frozen=True)
class NearlyLogReport:
    fn_spec: str
    probes: tuple[float, ...]
    c1_exponent_trend: TrendEvidence
    c1_liminf_estimate: float
    c1_liminf_ok: bool
    prop22_index_trend: IndexEvidence
    c2_direct_evidence: WindowEvidence
    analytic_verdict: str | None
    verdict: str  # "pass" | "fail" | "inconclusive"
    reason: str | None

    def to_dict(self) -> dict:
        return {
            "fn_spec": self.fn_spec,
            "probes": list(self.probes),
            "c1_exponent_trend": {
                "values": list(self.c1_exponent_trend.values),
                "fit_slope": self.c1_exponent_trend.fit_slope,
                "limit_estimate": self.c1_exponent_trend.limit_estimate,
                "ok": self.c1_exponent_trend.ok,
            },
            "c1_liminf_estimate": self.c1_liminf_estimate,
            "c1_liminf_ok": self.c1_liminf_ok,
            "prop22_index_trend": {
                "values": list(self.prop22_index_trend.values),
                "final": self.prop22_index_trend.final,
                "decay_rate": self.prop22_index_trend.decay_rate,
                "ok": self.prop22_index_trend.ok,
                "note": self.prop22_index_trend.note,
            },
            "c2_direct_evidence": {
                "pairs": [list(p) for p in self.c2_direct_evidence.pairs],
                "rows": [list(r) for r in self.c2_direct_evidence.rows],
                "ok": self.c2_direct_evidence.ok,
            },
            "analytic_verdict": self.analytic_verdict,
            "verdict": self.verdict,
            "reason": self.reason,
        }

    def format_text(self) -> str:
        lines = [f"function: {self.fn_spec}"]
        lines.append(f"verdict: {self.verdict}" + (f"  ({self.reason})" if self.reason else ""))
        if self.analytic_verdict:
            lines.append(f"analytic verdict (catalog): {self.analytic_verdict}")
        t = self.c1_exponent_trend
        lines.append(
            "sub-polynomial growth: local exponents "
            + ", ".join(f"{v:.4f}" for v in t.values[-4:])
            + f" -> limit ~ {t.limit_estimate:.4f} ({'ok' if t.ok else 'FAIL'})"
        )
        lines.append(
            f"tail minimum of f: {self.c1_liminf_estimate:.4f} "
            f"({'ok' if self.c1_liminf_ok else 'FAIL'} vs floor 2)"
        )
        ix = self.prop22_index_trend
        shown = ", ".join("-" if v is None else f"{v:.4f}" for v in ix.values[-4:])
        rate = "-" if ix.decay_rate is None else f"{ix.decay_rate:.3f}"
        lines.append(
            f"growth index tail: {shown}; decay rate {rate} "
            f"({'ok' if ix.ok else 'not conclusive'}; {ix.note})"
        )
        w = self.c2_direct_evidence
        lines.append(f"window infima ({'ok' if w.ok else 'below 1-eps somewhere'}):")
        for x, m, inf in w.rows:
            shown_inf = "-" if inf is None else f"{inf:.6f}"
            lines.append(f"  x={x:.3e}  m={m:g}  inf f(y)/f(x) = {shown_inf}")
        return "\n".join(lines)


def _fit_line(xs: list[float], ys: list[float]) -> tuple[float, float]:
    """Least-squares (slope, intercept)."""
    k = len(xs)
    mx = sum(xs) / k
    my = sum(ys) / k
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        return 0.0, my
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, my - slope * mx


def classify(fn: CandidateFunction, config: ProbeConfig | None = None) -> NearlyLogReport:
    """Classify a candidate against the nearly-logarithmic conditions.

    The verdict is pass when the exponent evidence and the tail minimum
    both hold and either the growth index decays or the direct window
    evidence meets every probed (eps, m) pair; fail when a condition is
    affirmatively violated; inconclusive otherwise.
    """
    cfg = config or ProbeConfig()
    xs = cfg.probes()
    fs = [fn.eval(x) for x in xs]
    if any(v <= 0 or not math.isfinite(v) for v in fs):
        trend = TrendEvidence((), 0.0, math.inf, False)
        index = IndexEvidence((), None, None, False, "f not positive at probes")
        window = WindowEvidence((), cfg.eps_m_pairs, False)
        return NearlyLogReport(
            fn.spec, xs, trend, math.nan, False, index, window,
            fn.analytic_verdict, "fail", "f is not positive and finite on the probes",
        )

    tail = max(2, cfg.tail)

    # C1, sub-polynomial part: local exponents between consecutive probes.
    lx = [math.log(x) for x in xs]
    lf = [math.log(v) for v in fs]
    exps = [(lf[i + 1] - lf[i]) / (lx[i + 1] - lx[i]) for i in range(len(xs) - 1)]
    us = [1.0 / lx[i + 1] for i in range(len(xs) - 1)]
    slope, intercept = _fit_line(us[-tail:], exps[-tail:])
    if slope >= 0.0:
        limit = max(intercept, 0.0)
    else:
        # values grow as x does: do not extrapolate against the trend
        limit = max(exps[-1], 0.0)
    exponent_ok = limit < cfg.eps_trend
    trend = TrendEvidence(tuple(exps), slope, limit, exponent_ok)

    # C1, liminf part: minimum of f over the tail probes.
    liminf_est = min(fs[-tail:])
    liminf_ok = liminf_est > cfg.liminf_floor

    # Differential route: growth index samples.
    a_vals: list[float | None] = []
    for x in xs:
        try:
            a_vals.append(growth_index(fn, x))
        except DomainError:
            a_vals.append(None)
    a_tail = a_vals[-tail:]
    index_ok = False
    decay_rate: float | None = None
    a_final = a_tail[-1]
    if any(v is None for v in a_tail):
        note = "growth index undefined at some tail probe"
    else:
        vals = [float(v) for v in a_tail]  # type: ignore[arg-type]
        nonincreasing = all(b <= a * (1.0 + 1e-9) for a, b in zip(vals, vals[1:]))
        if max(abs(v) for v in vals) < 1e-9:
            index_ok = True
            note = "growth index identically ~0"
        elif min(vals) <= 0.0:
            note = "growth index nonpositive at a tail probe; no decay evidence"
        elif vals[-1] < cfg.eps_trend and nonincreasing:
            index_ok = True
            note = "growth index already below the trend threshold"
        else:
            lus = [math.log(u) for u in us[-tail:]]
            las = [math.log(v) for v in vals]
            decay_rate, _ = _fit_line(lus, las)
            if decay_rate >= cfg.sigma_min and vals[-1] < vals[0]:
                index_ok = True
                note = f"growth index decays like (1/log x)^{decay_rate:.2f}"
            else:
                note = "growth index shows no decay over the tail"
    index = IndexEvidence(tuple(a_vals), a_final, decay_rate, index_ok, note)

    # Direct route: window infima on tail probes for each (eps, m) pair.
    rows: list[tuple[float, float, float | None]] = []
    window_ok = True
    for eps, m in cfg.eps_m_pairs:
        for x in xs[-tail:]:
            try:
                inf = window_infimum(fn, x, m, cfg.lam, cfg.grid)
            except DomainError:
                inf = None
            rows.append((x, m, inf))
            if inf is None or inf < 1.0 - eps:
                window_ok = False
    window = WindowEvidence(tuple(rows), cfg.eps_m_pairs, window_ok)

    if not exponent_ok:
        verdict, reason = "fail", (
            f"sub-polynomial growth fails: exponent trend -> {limit:.4g}, not 0"
        )
    elif not liminf_ok:
        verdict, reason = "fail", (
            f"tail values too small: min f over tail probes = {liminf_est:.4g} <= 2"
        )
    elif index_ok or window_ok:
        verdict, reason = "pass", None
    elif (
        a_final is not None
        and all(v is not None for v in a_tail)
        and a_final >= cfg.eps_trend
        and (decay_rate is None or decay_rate < cfg.sigma_min)
    ):
        verdict, reason = "fail", (
            f"slow variation fails: growth index stays at ~{a_final:.4g} "
            "(does not tend to 0) and window infima drop below 1 - eps"
        )
    else:
        verdict, reason = "inconclusive", (
            "no affirmative decay evidence and no affirmative violation "
            "at the probed range"
        )

    return NearlyLogReport(
        fn_spec=fn.spec,
        probes=xs,
        c1_exponent_trend=trend,
        c1_liminf_estimate=liminf_est,
        c1_liminf_ok=liminf_ok,
        prop22_index_trend=index,
        c2_direct_evidence=window,
        analytic_verdict=fn.analytic_verdict,
        verdict=verdict,
        reason=reason,
    )
