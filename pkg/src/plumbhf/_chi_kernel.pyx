# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lattice-enumeration kernel.

Mirrors :mod:`plumbhf._kernel_py` bit for bit: same point order, same union
rule, same event and component output.  int64 arithmetic only; callers must
pre-check that the weight bound fits and route big-integer inputs to the
reference kernel instead (``exact=True`` is rejected here).
"""

from libc.stdlib cimport calloc, free, malloc
from libc.stdint cimport int32_t, int64_t

KERNEL_NAME = "compiled"


cdef inline int32_t _find(int32_t* parent, int32_t a) noexcept nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


cdef inline void _union(int32_t* parent, int64_t* birth, int64_t* rep,
                        int32_t sa, int32_t sb, int64_t level, list events):
    cdef int32_t ra = _find(parent, sa)
    cdef int32_t rb = _find(parent, sb)
    cdef int64_t la, lb, new_rep
    if ra == rb:
        return
    la = birth[ra]
    lb = birth[rb]
    if la < level and lb < level:
        events.append((int(rep[ra]), int(rep[rb]), int(level)))
        new_rep = rep[ra] if rep[ra] < rep[rb] else rep[rb]
    elif la < level:
        new_rep = rep[ra]
    elif lb < level:
        new_rep = rep[rb]
    else:
        new_rep = rep[ra] if rep[ra] < rep[rb] else rep[rb]
    parent[ra] = rb
    rep[rb] = new_rep
    birth[rb] = la if la < lb else lb


def run(diag, edges, k, long long radius, object cutoff_obj, bint exact=False):
    if exact:
        raise ValueError("compiled kernel has no exact big-int mode; use the python kernel")
    cdef int n = len(diag)
    if len(k) != n:
        raise ValueError("diag and k length mismatch")
    if radius < 0:
        raise ValueError("radius must be >= 0")

    cdef long long cutoff = cutoff_obj
    cdef long long width = radius + 1
    cdef long long big_b = 1
    cdef int j, v, e
    cdef int ne = len(edges)
    cdef long long x, idx, q, c0, sub_n, run_total, b, s, nbuckets
    cdef int64_t acc, min_lv, max_lv, level
    cdef long long cutoff_c
    cdef int32_t qs

    cdef int64_t* dg = NULL
    cdef int64_t* kv = NULL
    cdef int64_t* eu = NULL
    cdef int64_t* ev = NULL
    cdef int64_t* strides = NULL
    cdef int64_t* coord = NULL
    cdef int64_t* wq = NULL
    cdef int64_t* lv = NULL
    cdef int64_t* counts = NULL
    cdef int64_t* offsets = NULL
    cdef int64_t* order = NULL
    cdef int32_t* pos = NULL
    cdef int32_t* parent = NULL
    cdef int64_t* birth = NULL
    cdef int64_t* rep = NULL

    cdef list events = []
    cdef list comps = []

    for j in range(n):
        big_b *= width

    try:
        dg = <int64_t*> malloc(n * sizeof(int64_t))
        kv = <int64_t*> malloc(n * sizeof(int64_t))
        eu = <int64_t*> malloc((ne if ne else 1) * sizeof(int64_t))
        ev = <int64_t*> malloc((ne if ne else 1) * sizeof(int64_t))
        strides = <int64_t*> malloc(n * sizeof(int64_t))
        coord = <int64_t*> malloc(n * sizeof(int64_t))
        wq = <int64_t*> malloc(n * width * sizeof(int64_t))
        lv = <int64_t*> malloc(big_b * sizeof(int64_t))
        if not (dg and kv and eu and ev and strides and coord and wq and lv):
            raise MemoryError()

        for v in range(n):
            dg[v] = diag[v]
            kv[v] = k[v]
        for e in range(ne):
            eu[e] = edges[e][0]
            ev[e] = edges[e][1]
        strides[n - 1] = 1
        for j in range(n - 2, -1, -1):
            strides[j] = strides[j + 1] * width
        for v in range(n):
            for x in range(width):
                wq[v * width + x] = dg[v] * x * x + kv[v] * x

        # pass 1: weight of every box point, tracking the global range
        for v in range(n):
            coord[v] = 0
        min_lv = 0
        max_lv = 0
        for idx in range(big_b):
            acc = 0
            for v in range(n):
                acc += wq[v * width + coord[v]]
            for e in range(ne):
                acc += 2 * coord[eu[e]] * coord[ev[e]]
            acc = -(acc) // 2
            lv[idx] = acc
            if idx == 0 or acc < min_lv:
                min_lv = acc
            if idx == 0 or acc > max_lv:
                max_lv = acc
            for j in range(n - 1, -1, -1):
                coord[j] += 1
                if coord[j] < width:
                    break
                coord[j] = 0

        if cutoff < min_lv:
            return int(min_lv), [], []
        cutoff_c = cutoff if cutoff < max_lv else max_lv

        # counting sort of the sublevel subset by (level, index)
        nbuckets = cutoff_c - min_lv + 1
        counts = <int64_t*> calloc(nbuckets, sizeof(int64_t))
        if not counts:
            raise MemoryError()
        sub_n = 0
        for idx in range(big_b):
            if lv[idx] <= cutoff_c:
                counts[lv[idx] - min_lv] += 1
                sub_n += 1
        offsets = <int64_t*> malloc(nbuckets * sizeof(int64_t))
        order = <int64_t*> malloc((sub_n if sub_n else 1) * sizeof(int64_t))
        pos = <int32_t*> malloc(big_b * sizeof(int32_t))
        if not (offsets and order and pos):
            raise MemoryError()
        run_total = 0
        for b in range(nbuckets):
            offsets[b] = run_total
            run_total += counts[b]
        for idx in range(big_b):
            pos[idx] = -1
        for idx in range(big_b):
            if lv[idx] <= cutoff_c:
                order[offsets[lv[idx] - min_lv]] = idx
                offsets[lv[idx] - min_lv] += 1
        for s in range(sub_n):
            pos[order[s]] = <int32_t> s

        parent = <int32_t*> malloc((sub_n if sub_n else 1) * sizeof(int32_t))
        birth = <int64_t*> malloc((sub_n if sub_n else 1) * sizeof(int64_t))
        rep = <int64_t*> malloc((sub_n if sub_n else 1) * sizeof(int64_t))
        if not (parent and birth and rep):
            raise MemoryError()

        for s in range(sub_n):
            idx = order[s]
            level = lv[idx]
            parent[s] = <int32_t> s
            birth[s] = level
            rep[s] = idx
            for j in range(n):
                c0 = (idx // strides[j]) % width
                if c0 > 0:
                    q = idx - strides[j]
                    qs = pos[q]
                    if 0 <= qs and qs < s:
                        _union(parent, birth, rep, <int32_t> s, qs, level, events)
                if c0 < radius:
                    q = idx + strides[j]
                    qs = pos[q]
                    if 0 <= qs and qs < s:
                        _union(parent, birth, rep, <int32_t> s, qs, level, events)

        for s in range(sub_n):
            if _find(parent, <int32_t> s) == <int32_t> s:
                comps.append((int(rep[s]), int(birth[s])))
        comps.sort()
        return int(min_lv), events, comps
    finally:
        free(dg); free(kv); free(eu); free(ev)
        free(strides); free(coord); free(wq); free(lv)
        free(counts); free(offsets); free(order); free(pos)
        free(parent); free(birth); free(rep)
