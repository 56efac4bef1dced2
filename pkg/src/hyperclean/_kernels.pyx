# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; the behavioral contract lives in hyperclean._kernels_py.

Every routine must agree with its pure-Python twin bit for bit: same
splitmix64 draws, same traversal order, same witnesses.  The equivalence
is enforced by tests/test_backends.py.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport int64_t, uint64_t
from libc.string cimport memset

cdef uint64_t GOLDEN = <uint64_t>0x9E3779B97F4A7C15
cdef double INV53 = 1.0 / 9007199254740992.0  # 2^-53


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1E3957D1
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline int popcount64(uint64_t x) nogil:
    x = x - ((x >> 1) & <uint64_t>0x5555555555555555)
    x = (x & <uint64_t>0x3333333333333333) + ((x >> 2) & <uint64_t>0x3333333333333333)
    x = (x + (x >> 4)) & <uint64_t>0x0F0F0F0F0F0F0F0F
    return <int>((x * <uint64_t>0x0101010101010101) >> 56)


cdef inline int lowest_bit(uint64_t x) nogil:
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i


cdef int* _copy_edges(list flat_edges) except NULL:
    cdef Py_ssize_t L = len(flat_edges)
    cdef int* buf = <int*>PyMem_Malloc(max(L, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(L):
        buf[i] = flat_edges[i]
    return buf


def random_deletion_members(int n, int uniformity, list flat_edges, double p, seed):
    """One randomized-deletion trial; see the pure twin for the contract."""
    cdef uint64_t state = <uint64_t>(<object>seed & ((1 << 64) - 1))
    cdef int* ed = _copy_edges(flat_edges)
    cdef int m = len(flat_edges) // uniformity
    cdef unsigned char* kept = <unsigned char*>PyMem_Malloc(max(n, 1))
    cdef int v, ei, j, base
    cdef bint full, verified
    try:
        memset(kept, 0, max(n, 1))
        for v in range(n):
            state = state + GOLDEN
            if (mix64(state) >> 11) * INV53 < p:
                kept[v] = 1
        for ei in range(m):
            base = ei * uniformity
            full = True
            for j in range(base, base + uniformity):
                if not kept[ed[j]]:
                    full = False
                    break
            if full:
                kept[ed[base]] = 0
        verified = True
        for ei in range(m):
            base = ei * uniformity
            full = True
            for j in range(base, base + uniformity):
                if not kept[ed[j]]:
                    full = False
                    break
            if full:
                verified = False
                break
        members = [v for v in range(n) if kept[v]]
        return members, bool(verified)
    finally:
        PyMem_Free(kept)
        PyMem_Free(ed)


def mc_random_deletion(int n, int uniformity, list flat_edges, double p,
                       master_seed, int trials):
    """Batch of randomized-deletion trials; returns (sizes, all_verified)."""
    cdef uint64_t master = <uint64_t>(<object>master_seed & ((1 << 64) - 1))
    cdef int* ed = _copy_edges(flat_edges)
    cdef int m = len(flat_edges) // uniformity
    cdef unsigned char* kept = <unsigned char*>PyMem_Malloc(max(n, 1))
    cdef uint64_t seed, state
    cdef int i, v, ei, j, base, count
    cdef bint full, all_verified = True
    sizes = []
    try:
        for i in range(trials):
            seed = mix64(master + (<uint64_t>(i + 1)) * GOLDEN)
            state = seed
            memset(kept, 0, max(n, 1))
            count = 0
            for v in range(n):
                state = state + GOLDEN
                if (mix64(state) >> 11) * INV53 < p:
                    kept[v] = 1
                    count += 1
            for ei in range(m):
                base = ei * uniformity
                full = True
                for j in range(base, base + uniformity):
                    if not kept[ed[j]]:
                        full = False
                        break
                if full:
                    kept[ed[base]] = 0
                    count -= 1
            for ei in range(m):
                base = ei * uniformity
                full = True
                for j in range(base, base + uniformity):
                    if not kept[ed[j]]:
                        full = False
                        break
                if full:
                    all_verified = False
                    break
            sizes.append(count)
        return sizes, bool(all_verified)
    finally:
        PyMem_Free(kept)
        PyMem_Free(ed)


def enum_alpha(int n, list edge_masks):
    """Independence number by full subset enumeration (lowest witness)."""
    cdef int me = len(edge_masks)
    cdef uint64_t* em = <uint64_t*>PyMem_Malloc(max(me, 1) * sizeof(uint64_t))
    cdef Py_ssize_t i
    cdef uint64_t mask, best_mask = 0
    cdef int best = 0, c
    cdef bint ok
    if em == NULL:
        raise MemoryError()
    try:
        for i in range(me):
            em[i] = edge_masks[i]
        for mask in range(<uint64_t>1 << n):
            c = popcount64(mask)
            if c <= best:
                continue
            ok = True
            for i in range(me):
                if mask & em[i] == em[i]:
                    ok = False
                    break
            if ok:
                best = c
                best_mask = mask
        return best, int(best_mask)
    finally:
        PyMem_Free(em)


def bnb_alpha(int n, list edge_masks, list order, int best0, best_mask0):
    """Branch-and-bound twin of _kernels_py.bnb_alpha."""
    cdef int me = len(edge_masks)
    cdef uint64_t* em = <uint64_t*>PyMem_Malloc(max(me, 1) * sizeof(uint64_t))
    cdef uint64_t* rest = <uint64_t*>PyMem_Malloc((n + 1) * sizeof(uint64_t))
    # per-vertex incident edge masks, flattened
    cdef int* voff = <int*>PyMem_Malloc((n + 1) * sizeof(int))
    cdef uint64_t* vedges = NULL
    cdef int* cnt = <int*>PyMem_Malloc(max(n, 1) * sizeof(int))
    cdef int* ordc = <int*>PyMem_Malloc(max(n, 1) * sizeof(int))
    cdef int cap = 2 * n + 8
    cdef int* st_k = <int*>PyMem_Malloc(cap * sizeof(int))
    cdef uint64_t* st_mask = <uint64_t*>PyMem_Malloc(cap * sizeof(uint64_t))
    cdef int* st_count = <int*>PyMem_Malloc(cap * sizeof(int))
    cdef int best = best0
    cdef uint64_t best_mask = <uint64_t>(<object>best_mask0)
    cdef int i, k, count, v, u, open_e, maxdeg, total, top
    cdef uint64_t imask, avail, pend, t, ubit, e
    cdef bint can
    if (em == NULL or rest == NULL or voff == NULL or cnt == NULL
            or ordc == NULL or st_k == NULL or st_mask == NULL or st_count == NULL):
        raise MemoryError()
    try:
        for i in range(me):
            em[i] = edge_masks[i]
        for i in range(n):
            ordc[i] = order[i]
        memset(cnt, 0, max(n, 1) * sizeof(int))
        # count incidences, then fill
        for i in range(me):
            t = em[i]
            while t:
                v = lowest_bit(t)
                cnt[v] += 1
                t &= t - 1
        total = 0
        for v in range(n):
            voff[v] = total
            total += cnt[v]
        voff[n] = total
        vedges = <uint64_t*>PyMem_Malloc(max(total, 1) * sizeof(uint64_t))
        if vedges == NULL:
            raise MemoryError()
        memset(cnt, 0, max(n, 1) * sizeof(int))
        for i in range(me):
            t = em[i]
            while t:
                v = lowest_bit(t)
                vedges[voff[v] + cnt[v]] = em[i]
                cnt[v] += 1
                t &= t - 1
        memset(cnt, 0, max(n, 1) * sizeof(int))

        rest[n] = 0
        for k in range(n - 1, -1, -1):
            rest[k] = rest[k + 1] | (<uint64_t>1 << ordc[k])

        top = 0
        st_k[0] = 0
        st_mask[0] = 0
        st_count[0] = 0
        top = 1
        while top > 0:
            top -= 1
            k = st_k[top]
            imask = st_mask[top]
            count = st_count[top]
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
            for i in range(me):
                e = em[i]
                if e & ~avail == 0:
                    open_e += 1
                    t = e & pend
                    while t:
                        v = lowest_bit(t)
                        cnt[v] += 1
                        if cnt[v] > maxdeg:
                            maxdeg = cnt[v]
                        t &= t - 1
            if open_e:
                t = pend
                while t:
                    v = lowest_bit(t)
                    cnt[v] = 0
                    t &= t - 1
                if count + (n - k) - (open_e + maxdeg - 1) // maxdeg <= best:
                    continue
            u = ordc[k]
            ubit = <uint64_t>1 << u
            can = True
            for i in range(voff[u], voff[u + 1]):
                if vedges[i] & ~(imask | ubit) == 0:
                    can = False
                    break
            st_k[top] = k + 1
            st_mask[top] = imask
            st_count[top] = count
            top += 1
            if can:
                st_k[top] = k + 1
                st_mask[top] = imask | ubit
                st_count[top] = count + 1
                top += 1
        return best, int(best_mask)
    finally:
        PyMem_Free(em)
        PyMem_Free(rest)
        PyMem_Free(voff)
        if vedges != NULL:
            PyMem_Free(vedges)
        PyMem_Free(cnt)
        PyMem_Free(ordc)
        PyMem_Free(st_k)
        PyMem_Free(st_mask)
        PyMem_Free(st_count)


def alpha_subset_table(int n, list closed_nbr_masks):
    """Subset DP for alpha over all induced subgraphs of a graph."""
    cdef uint64_t size = <uint64_t>1 << n
    table = bytearray(size)
    cdef unsigned char[::1] tv = table
    cdef uint64_t* nbr = <uint64_t*>PyMem_Malloc(max(n, 1) * sizeof(uint64_t))
    cdef uint64_t mask
    cdef int v
    cdef unsigned char without, with_v
    if nbr == NULL:
        raise MemoryError()
    try:
        for v in range(n):
            nbr[v] = closed_nbr_masks[v]
        for mask in range(1, size):
            v = lowest_bit(mask)
            without = tv[mask & (mask - 1)]
            with_v = 1 + tv[mask & ~nbr[v]]
            tv[mask] = with_v if with_v > without else without
        return table
    finally:
        PyMem_Free(nbr)
