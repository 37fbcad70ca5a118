"""Pure-Python term-expansion kernel.

Same contract as the compiled `_kernel` extension: raw dicts mapping
monomials (sorted tuples of (indeterminate, exponent) pairs) to Fraction
coefficients, zero coefficients never stored.  Results must be value-identical
between the two backends; the test suite runs the golden files against
whichever backend is selected.
"""

from __future__ import annotations

from .errors import TermLimitExceeded

BACKEND = "python"


def mono_mul(ma: tuple, mb: tuple) -> tuple:
    """Merge two sorted monomials, adding exponents."""
    if not ma:
        return mb
    if not mb:
        return ma
    out = []
    i = j = 0
    na, nb = len(ma), len(mb)
    while i < na and j < nb:
        va, ea = ma[i]
        vb, eb = mb[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(ma[i])
            i += 1
        else:
            out.append(mb[j])
            j += 1
    out.extend(ma[i:])
    out.extend(mb[j:])
    return tuple(out)


def add_dicts(a: dict, b: dict, limit: int) -> dict:
    out = dict(a)
    get = out.get
    for m, c in b.items():
        s = get(m)
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


def mul_dicts(a: dict, b: dict, limit: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            s = get(m)
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
