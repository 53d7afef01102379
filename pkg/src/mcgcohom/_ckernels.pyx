# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Q' flip enumeration and exhaustive cocycle checks.

Mirrors ``_pykernels`` exactly; arguments are integer sequences.
"""

from cpython.array cimport array
from libc.stdint cimport int64_t


cdef inline int64_t[::1] _as_i64(seq):
    return array("q", seq)


def qprime_masks(slot_comp, partner, slot_curve, comp_genus, comp_nslots, int n_curves):
    cdef int64_t[::1] sc = _as_i64(slot_comp)
    cdef int64_t[::1] pt = _as_i64(partner)
    cdef int64_t[::1] cv = _as_i64(slot_curve)
    cdef int64_t[::1] cg = _as_i64(comp_genus)
    cdef int64_t[::1] cn = _as_i64(comp_nslots)
    cdef Py_ssize_t ncomp = cg.shape[0]
    cdef Py_ssize_t nslots = sc.shape[0]
    cdef int64_t[::1] img = array("q", [0] * ncomp)
    cdef int64_t[::1] used = array("q", [0] * ncomp)
    cdef long mask, top = 1L << n_curves
    cdef Py_ssize_t s, c, d, t
    cdef bint ok
    out = []
    for mask in range(top):
        for c in range(ncomp):
            img[c] = -1
            used[c] = 0
        ok = True
        for s in range(nslots):
            if cv[s] >= 0 and (mask >> cv[s]) & 1:
                t = pt[s]
            else:
                t = s
            c = sc[s]
            d = sc[t]
            if img[c] < 0:
                img[c] = d
            elif img[c] != d:
                ok = False
                break
        if not ok:
            continue
        for c in range(ncomp):
            d = img[c] if img[c] >= 0 else c
            if used[d] or cg[c] != cg[d] or cn[c] != cn[d]:
                ok = False
                break
            used[d] = 1
        if ok:
            out.append(mask)
    return out


def cocycle_violations(Py_ssize_t n, Py_ssize_t npts, Py_ssize_t ngens, rgen, parent, pgen,
                       order, inv_act, vals, int64_t modulus, bint first_only):
    cdef int64_t[::1] rg = _as_i64(rgen)
    cdef int64_t[::1] par = _as_i64(parent)
    cdef int64_t[::1] pg = _as_i64(pgen)
    cdef int64_t[::1] od = _as_i64(order)
    cdef int64_t[::1] ia = _as_i64(inv_act)
    cdef int64_t[::1] va = _as_i64(vals)
    cdef int64_t[::1] row = array("q", [0] * n)
    cdef Py_ssize_t a, b, i, r, base_a, base_ab, base_b
    cdef int64_t diff
    cdef long long count = 0
    cdef Py_ssize_t fa = -1, fb = -1, fr = -1
    cdef Py_ssize_t ident = od[0]
    for a in range(n):
        row[ident] = a
        for i in range(1, n):
            b = od[i]
            row[b] = rg[row[par[b]] * ngens + pg[b]]
        base_a = a * npts
        for b in range(n):
            base_ab = row[b] * npts
            base_b = b * npts
            for r in range(npts):
                diff = va[base_ab + r] - va[base_a + r] - va[base_b + ia[base_a + r]]
                if modulus > 0:
                    diff = diff % modulus
                if diff != 0:
                    if count == 0:
                        fa = a
                        fb = b
                        fr = r
                    count += 1
                    if first_only:
                        return (count, fa, fb, fr)
    return (count, fa, fb, fr)
