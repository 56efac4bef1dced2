"""Uniform hypergraphs with exact degree statistics.

An (r+1)-uniform hypergraph on vertices ``0..n-1`` stores each edge as an
ascending tuple and the edge set in lexicographic order.  The canonical
form makes every derived artifact (transcripts, certificates, CSV
reports) deterministic.  Values are immutable; all mutation is by
returning new values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DuplicateVertexInEdgeError,
    EmptyVertexSetError,
    ParseError,
    VertexOutOfRangeError,
    WrongArityError,
)


@dataclass(frozen=True)
class UniformHypergraph:
    """An (r+1)-uniform hypergraph in canonical form.

    ``uniformity`` is the edge size r+1; ordinary graphs have
    ``uniformity == 2``.  Use :func:`validate` to build one from raw,
    possibly unnormalized input.
    """

    uniformity: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return self.uniformity - 1

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree_sequence(self) -> list[int]:
        """Per-vertex edge counts."""
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def is_independent(self, members: Iterable[int]) -> bool:
        """True when no edge lies entirely inside `members`."""
        s = set(members)
        for e in self.edges:
            if all(v in s for v in e):
                return False
        return True

    def __repr__(self) -> str:  # keep transcripts readable
        return f"UniformHypergraph(uniformity={self.uniformity}, n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class DegreeProfile:
    """Exact degree statistics: Delta as an int, the average as a rational."""

    degrees: tuple[int, ...]
    max_degree: int
    avg_degree: Fraction


def validate(
    raw_edges: Iterable[Sequence[int]], n: int, uniformity: int
) -> UniformHypergraph:
    """Normalize raw edges into a canonical hypergraph.

    Edges are sorted ascending, duplicates are dropped, and the edge set
    is ordered lexicographically.

    Raises WrongArityError, DuplicateVertexInEdgeError, or
    VertexOutOfRangeError on malformed input.
    """
    if uniformity < 2:
        raise WrongArityError(f"uniformity must be >= 2, got {uniformity}")
    if n < 0:
        raise VertexOutOfRangeError(f"n must be >= 0, got {n}")
    seen: set[tuple[int, ...]] = set()
    for raw in raw_edges:
        edge = tuple(raw)
        if len(edge) != uniformity:
            raise WrongArityError(
                f"edge {edge} has {len(edge)} vertices, expected {uniformity}"
            )
        if len(set(edge)) != uniformity:
            raise DuplicateVertexInEdgeError(f"edge {edge} repeats a vertex")
        for v in edge:
            if not isinstance(v, int) or v < 0 or v >= n:
                raise VertexOutOfRangeError(f"vertex {v} not in [0, {n})")
        seen.add(tuple(sorted(edge)))
    return UniformHypergraph(uniformity=uniformity, n=n, edges=tuple(sorted(seen)))


def degree_profile(H: UniformHypergraph) -> DegreeProfile:
    """Exact degrees, maximum degree, and average degree (r+1)e/n."""
    if H.n == 0:
        raise EmptyVertexSetError("degree profile undefined for n = 0")
    deg = H.degree_sequence()
    return DegreeProfile(
        degrees=tuple(deg),
        max_degree=max(deg),
        avg_degree=Fraction(H.uniformity * H.num_edges, H.n),
    )


def induce(
    H: UniformHypergraph, vertices: Iterable[int]
) -> tuple[UniformHypergraph, tuple[int, ...]]:
    """Induced subhypergraph on `vertices`, reindexed to 0..|U|-1.

    Returns ``(sub, kept)`` where ``kept[i]`` is the original index of
    the new vertex ``i`` (the retained index map).
    """
    kept = sorted(set(vertices))
    for v in kept:
        if v < 0 or v >= H.n:
            raise VertexOutOfRangeError(f"vertex {v} not in [0, {H.n})")
    pos = {v: i for i, v in enumerate(kept)}
    new_edges = []
    for e in H.edges:
        if all(v in pos for v in e):
            new_edges.append(tuple(pos[v] for v in e))
    sub = UniformHypergraph(
        uniformity=H.uniformity, n=len(kept), edges=tuple(sorted(new_edges))
    )
    return sub, tuple(kept)


def delete_vertex(H: UniformHypergraph, v: int) -> UniformHypergraph:
    """Remove one vertex; equals the induced subhypergraph on V minus v."""
    if v < 0 or v >= H.n:
        raise VertexOutOfRangeError(f"vertex {v} not in [0, {H.n})")
    sub, _ = induce(H, [u for u in range(H.n) if u != v])
    return sub


# --- "uhg" text format ----------------------------------------------------
#
#   # optional comment lines
#   uhg <uniformity> <n> <m>
#   <m lines of uniformity ascending 0-based vertex indices>


def parse_uhg(text: str) -> UniformHypergraph:
    """Parse the "uhg" text format; errors report 1-based line numbers."""
    header = None
    edges: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[0] != "uhg":
                raise ParseError("expected header 'uhg <uniformity> <n> <m>'", lineno)
            try:
                uniformity, n, m = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("header fields must be integers", lineno) from None
            if uniformity < 2 or n < 0 or m < 0:
                raise ParseError("header values out of range", lineno)
            header = (uniformity, n, m)
            continue
        uniformity, n, m = header
        try:
            vs = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError("edge line must contain integers", lineno) from None
        if len(vs) != uniformity:
            raise ParseError(
                f"edge has {len(vs)} vertices, expected {uniformity}", lineno
            )
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise ParseError("edge vertices must be strictly ascending", lineno)
        if vs[0] < 0 or vs[-1] >= n:
            raise ParseError(f"vertex out of range [0, {n})", lineno)
        edges.append(vs)
    if header is None:
        raise ParseError("missing 'uhg' header", 0)
    if len(edges) != header[2]:
        raise ParseError(
            f"header declares {header[2]} edges, file has {len(edges)}", 0
        )
    return validate(edges, header[1], header[0])


def format_uhg(H: UniformHypergraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.append(f"uhg {H.uniformity} {H.n} {H.num_edges}")
    for e in H.edges:
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def load_uhg(path) -> UniformHypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_uhg(fh.read())


def save_uhg(H: UniformHypergraph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_uhg(H, comment=comment))
