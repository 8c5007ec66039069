# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force coloring scan (hot kernel).

Semantics are identical to vknots._colorkernel_py.filter_colorings; see
there for the argument layout.  The scan is a flat odometer over all
n**num_edges assignments with an early exit on the first violated
crossing, so the common path per assignment is a handful of table reads.
"""

from libc.stdlib cimport free, malloc


def filter_colorings(int n, int num_edges, classical, virtual, table, ldiv, fplus, fminus):
    cdef int n_classical = len(classical)
    cdef int n_virtual = len(virtual)
    cdef int i, j, k, o, base
    cdef bint ok
    cdef int *cls = NULL
    cdef int *vrt = NULL
    cdef int *tab = NULL
    cdef int *div = NULL
    cdef int *fp = NULL
    cdef int *fm = NULL
    cdef int *colors = NULL

    if num_edges == 0:
        return [()]

    cls = <int *> malloc((5 * n_classical or 1) * sizeof(int))
    vrt = <int *> malloc((5 * n_virtual or 1) * sizeof(int))
    tab = <int *> malloc(n * n * sizeof(int))
    div = <int *> malloc(n * n * sizeof(int))
    fp = <int *> malloc(n * sizeof(int))
    fm = <int *> malloc(n * sizeof(int))
    colors = <int *> malloc(num_edges * sizeof(int))
    if not (cls and vrt and tab and div and fp and fm and colors):
        free(cls); free(vrt); free(tab); free(div); free(fp); free(fm); free(colors)
        raise MemoryError()

    try:
        for i in range(n_classical):
            for j in range(5):
                cls[5 * i + j] = classical[i][j]
        for i in range(n_virtual):
            for j in range(5):
                vrt[5 * i + j] = virtual[i][j]
        for i in range(n):
            for j in range(n):
                tab[n * i + j] = table[i][j]
                div[n * i + j] = ldiv[i][j]
            fp[i] = fplus[i]
            fm[i] = fminus[i]
        for i in range(num_edges):
            colors[i] = 0

        out = []
        while True:
            ok = True
            for i in range(n_classical):
                base = 5 * i
                o = colors[cls[base + 2]]
                if colors[cls[base + 4]] != o:
                    ok = False
                    break
                if cls[base] > 0:
                    if colors[cls[base + 3]] != tab[n * colors[cls[base + 1]] + o]:
                        ok = False
                        break
                elif colors[cls[base + 3]] != div[n * colors[cls[base + 1]] + o]:
                    ok = False
                    break
            if ok:
                for i in range(n_virtual):
                    base = 5 * i
                    if vrt[base] > 0:
                        if colors[vrt[base + 2]] != fm[colors[vrt[base + 1]]] or \
                           colors[vrt[base + 4]] != fp[colors[vrt[base + 3]]]:
                            ok = False
                            break
                    elif colors[vrt[base + 2]] != fp[colors[vrt[base + 1]]] or \
                         colors[vrt[base + 4]] != fm[colors[vrt[base + 3]]]:
                        ok = False
                        break
            if ok:
                out.append(tuple([colors[k] for k in range(num_edges)]))
            i = num_edges - 1
            while i >= 0 and colors[i] == n - 1:
                colors[i] = 0
                i -= 1
            if i < 0:
                return out
            colors[i] += 1
    finally:
        free(cls)
        free(vrt)
        free(tab)
        free(div)
        free(fp)
        free(fm)
        free(colors)
