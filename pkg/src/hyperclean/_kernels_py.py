"""Pure-Python kernels for the hot inner loops.

`hyperclean._kernels` is the compiled (Cython) twin of this module; the
two must agree bit for bit.  Every routine here takes flat primitive
data (vertex counts, flattened edge arrays, bitmasks, seeds) so the
implementations can stay line-for-line comparable.  Randomness is
splitmix64 throughout; see hyperclean.rng for the derivation scheme.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_INV53 = 2.0 ** -53


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1E3957D1) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def random_deletion_members(
    n: int, uniformity: int, flat_edges: list[int], p: float, seed: int
) -> tuple[list[int], bool]:
    """One randomized-deletion trial.

    Keeps each vertex independently with probability `p` (splitmix64
    stream seeded with `seed`, one draw per vertex in index order), then
    scans edges in canonical order and drops the lowest-index vertex of
    every edge that is still fully kept.  Returns the surviving members
    and the result of an independent re-verification pass.
    """
    kept = bytearray(n)
    state = seed & MASK64
    for v in range(n):
        state = (state + GOLDEN) & MASK64
        if (_mix64(state) >> 11) * _INV53 < p:
            kept[v] = 1
    m = len(flat_edges) // uniformity
    for ei in range(m):
        base = ei * uniformity
        full = True
        for j in range(base, base + uniformity):
            if not kept[flat_edges[j]]:
                full = False
                break
        if full:
            # edges are ascending, so flat_edges[base] is the lowest index
            kept[flat_edges[base]] = 0
    verified = True
    for ei in range(m):
        base = ei * uniformity
        full = True
        for j in range(base, base + uniformity):
            if not kept[flat_edges[j]]:
                full = False
                break
        if full:
            verified = False
            break
    return [v for v in range(n) if kept[v]], verified


def mc_random_deletion(
    n: int,
    uniformity: int,
    flat_edges: list[int],
    p: float,
    master_seed: int,
    trials: int,
) -> tuple[list[int], bool]:
    """Sizes of `trials` randomized-deletion samples, each re-verified.

    Trial i is seeded with the (i+1)-th splitmix64 output of
    `master_seed` (the derive_seed scheme).
    """
    m = len(flat_edges) // uniformity
    sizes = []
    all_verified = True
    for i in range(trials):
        seed = _mix64((master_seed + (i + 1) * GOLDEN) & MASK64)
        kept = bytearray(n)
        state = seed
        count = 0
        for v in range(n):
            state = (state + GOLDEN) & MASK64
            if (_mix64(state) >> 11) * _INV53 < p:
                kept[v] = 1
                count += 1
        for ei in range(m):
            base = ei * uniformity
            full = True
            for j in range(base, base + uniformity):
                if not kept[flat_edges[j]]:
                    full = False
                    break
            if full:
                kept[flat_edges[base]] = 0
                count -= 1
        for ei in range(m):
            base = ei * uniformity
            full = True
            for j in range(base, base + uniformity):
                if not kept[flat_edges[j]]:
                    full = False
                    break
            if full:
                all_verified = False
                break
        sizes.append(count)
    return sizes, all_verified


def enum_alpha(n: int, edge_masks: list[int]) -> tuple[int, int]:
    """Independence number by full subset enumeration.

    Returns (size, witness bitmask); the witness is the lowest-valued
    optimal mask, so results are deterministic.
    """
    best = 0
    best_mask = 0
    for mask in range(1 << n):
        c = mask.bit_count()
        if c <= best:
            continue
        ok = True
        for em in edge_masks:
            if mask & em == em:
                ok = False
                break
        if ok:
            best = c
            best_mask = mask
    return best, best_mask


def bnb_alpha(
    n: int,
    edge_masks: list[int],
    order: list[int],
    best0: int,
    best_mask0: int,
) -> tuple[int, int]:
    """Branch-and-bound independence number over bitmasks.

    Branches on vertices in `order` (include first, then exclude),
    starting from a greedy incumbent.  Prunes with the trivial
    remaining-count bound and a degree-sum bound: every edge alive in
    the undecided region forces at least ceil(open/maxdeg) future
    exclusions.  Deterministic: ties never arise because improvement is
    strict and the order is fixed.
    """
    vert_edges: list[list[int]] = [[] for _ in range(n)]
    for em in edge_masks:
        t = em
        while t:
            v = (t & -t).bit_length() - 1
            vert_edges[v].append(em)
            t &= t - 1
    rest = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        rest[k] = rest[k + 1] | (1 << order[k])

    best = best0
    best_mask = best_mask0
    cnt = [0] * n
    stack = [(0, 0, 0)]
    while stack:
        k, imask, count = stack.pop()
        if count + (n - k) <= best:
            continue
        if k == n:
            best = count
            best_mask = imask
            continue
        avail = imask | rest[k]
        open_e = 0
        maxdeg = 0
        pend = rest[k]
        for em in edge_masks:
            if em & ~avail == 0:
                open_e += 1
                t = em & pend
                while t:
                    v = (t & -t).bit_length() - 1
                    cnt[v] += 1
                    if cnt[v] > maxdeg:
                        maxdeg = cnt[v]
                    t &= t - 1
        if open_e:
            t = pend
            while t:
                v = (t & -t).bit_length() - 1
                cnt[v] = 0
                t &= t - 1
            if count + (n - k) - (open_e + maxdeg - 1) // maxdeg <= best:
                continue
        u = order[k]
        ubit = 1 << u
        can = True
        for em in vert_edges[u]:
            if em & ~(imask | ubit) == 0:
                can = False
                break
        # exclude branch pushed first so the include branch is explored
        # first (LIFO), matching plain DFS order
        stack.append((k + 1, imask, count))
        if can:
            stack.append((k + 1, imask | ubit, count + 1))
    return best, best_mask


def alpha_subset_table(n: int, closed_nbr_masks: list[int]) -> bytearray:
    """alpha(G[S]) for every vertex subset S of a graph (r = 1).

    Standard subset DP: split on the lowest vertex v of S, either
    skipping v or taking it and discarding its closed neighborhood.
    """
    size = 1 << n
    table = bytearray(size)
    for mask in range(1, size):
        v = (mask & -mask).bit_length() - 1
        without = table[mask & (mask - 1)]
        with_v = 1 + table[mask & ~closed_nbr_masks[v]]
        table[mask] = with_v if with_v > without else without
    return table
