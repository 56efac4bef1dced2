"""Weighted degree and density quantities.

Given strictly positive vertex weights w, the weighted normalized degree
of v is

    lambda(v) = w(v)^(-r) * sum over edges e containing v of
                prod of w(u) for u in e minus v,

Delta_w is its maximum, mu(U) = sum of w(u)^(r+1), and the weighted
average degree is d_w = (r+1) * (sum over edges of prod w) / mu(V).
With unit weights everything reduces bit-exactly to the unweighted
profile, which is what the oracle-equivalence tests pin down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import UniformHypergraph
from .errors import (
    EmptyVertexSetError,
    LengthMismatchError,
    NotIndependentError,
    ParseError,
    VertexOutOfRangeError,
)


@dataclass(frozen=True)
class VertexWeights:
    """One strictly positive rational per vertex."""

    w: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.w)

    def __getitem__(self, v: int) -> Fraction:
        return self.w[v]


def make_weights(values: Iterable, n: int | None = None) -> VertexWeights:
    """Build VertexWeights from ints/Fractions/strings like "3/2"."""
    ws = tuple(Fraction(v) for v in values)
    if n is not None and len(ws) != n:
        raise LengthMismatchError(f"got {len(ws)} weights for {n} vertices")
    for i, x in enumerate(ws):
        if x <= 0:
            raise ValueError(f"weight {x} at vertex {i} is not positive")
    return VertexWeights(ws)


def unit_weights(n: int) -> VertexWeights:
    return VertexWeights((Fraction(1),) * n)


@dataclass(frozen=True)
class WeightedProfile:
    lambda_: tuple[Fraction, ...]
    delta_w: Fraction
    mu_total: Fraction
    d_w: Fraction


def weighted_profile(H: UniformHypergraph, weights: VertexWeights) -> WeightedProfile:
    """Exact weighted profile; with unit weights it equals the degree profile."""
    if len(weights) != H.n:
        raise LengthMismatchError(
            f"{len(weights)} weights for hypergraph on {H.n} vertices"
        )
    if H.n == 0:
        raise EmptyVertexSetError("weighted profile undefined for n = 0")
    r = H.r
    w = weights.w
    lam = [Fraction(0)] * H.n
    edge_mass = Fraction(0)
    for e in H.edges:
        prod = Fraction(1)
        for v in e:
            prod *= w[v]
        edge_mass += prod
        for v in e:
            # prod / w(v) is the product over e minus v; divide once more
            # by w(v)^r to normalize
            lam[v] += prod / w[v] ** (r + 1)
    mu = sum((x ** (r + 1) for x in w), start=Fraction(0))
    return WeightedProfile(
        lambda_=tuple(lam),
        delta_w=max(lam),
        mu_total=mu,
        d_w=(r + 1) * edge_mass / mu,
    )


def weighted_alpha_star(
    H: UniformHypergraph, weights: VertexWeights, members: Iterable[int]
) -> Fraction:
    """Weighted value sum of w(v)^(r+1) of an independent set.

    Raises NotIndependentError when `members` contains a full edge; the
    exact maximization over all independent sets lives in
    hyperclean.indset.exact_alpha_weighted.
    """
    if len(weights) != H.n:
        raise LengthMismatchError(
            f"{len(weights)} weights for hypergraph on {H.n} vertices"
        )
    s = set(members)
    for v in s:
        if v < 0 or v >= H.n:
            raise VertexOutOfRangeError(f"vertex {v} not in [0, {H.n})")
    if not H.is_independent(s):
        raise NotIndependentError("member set contains a full edge")
    return sum((weights[v] ** (H.r + 1) for v in s), start=Fraction(0))


def parse_weights(text: str, n: int) -> VertexWeights:
    """Weight file: one rational per line ("p/q" or integer), n lines."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            x = Fraction(line)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {line!r}", lineno) from None
        if x <= 0:
            raise ParseError(f"weight must be positive, got {line}", lineno)
        values.append(x)
    if len(values) != n:
        raise ParseError(f"expected {n} weights, got {len(values)}", 0)
    return VertexWeights(tuple(values))


def load_weights(path, n: int) -> VertexWeights:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_weights(fh.read(), n)
