# cython: language_level=3
"""Compiled term-expansion kernel.

Mirror of `_kernel_py`; the win is loop and dict-dispatch overhead, the
coefficient arithmetic stays exact (Fraction objects).
"""

from jetvar.errors import TermLimitExceeded

BACKEND = "cython"


cpdef tuple mono_mul(tuple ma, tuple mb):
    cdef Py_ssize_t i = 0, j = 0, na = len(ma), nb = len(mb)
    if na == 0:
        return mb
    if nb == 0:
        return ma
    cdef list out = []
    cdef object va, vb, ea, eb
    while i < na and j < nb:
        va = (<tuple>ma[i])[0]
        vb = (<tuple>mb[j])[0]
        if va == vb:
            ea = (<tuple>ma[i])[1]
            eb = (<tuple>mb[j])[1]
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(ma[i])
            i += 1
        else:
            out.append(mb[j])
            j += 1
    while i < na:
        out.append(ma[i])
        i += 1
    while j < nb:
        out.append(mb[j])
        j += 1
    return tuple(out)


cpdef dict add_dicts(dict a, dict b, Py_ssize_t limit):
    cdef dict out = dict(a)
    cdef object m, c, s
    for m, c in b.items():
        s = out.get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = s
            else:
                del out[m]
    if len(out) > limit:
        raise TermLimitExceeded(f"{len(out)} terms exceeds cap {limit}")
    return out


cpdef dict mul_dicts(dict a, dict b, Py_ssize_t limit):
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef object ma, ca, mb, cb, m, s
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(<tuple>ma, <tuple>mb)
            s = out.get(m)
            if s is None:
                out[m] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        if len(out) > limit:
            raise TermLimitExceeded(f"{len(out)} terms exceeds cap {limit}")
    return out
