"""Exact-rational multivariate polynomials over indexed indeterminates.

A polynomial is a dict from monomials to nonzero Fraction coefficients.
A monomial is a tuple of (indeterminate, exponent) pairs sorted by the
indeterminate's natural tuple order (see indets.py).  Canonical form is
therefore unique by construction: equal expressions have equal dicts.

Serialization order is graded-lex: decreasing total degree, ties broken by
tuple comparison of the monomials themselves.  The exact text format is
frozen by golden tests.
"""

from __future__ import annotations

import os
from fractions import Fraction

from ._backend import add_dicts, mul_dicts
from .errors import CyclicSubstitution
from .indets import AUX, T, indet_str, with_extra_deriv

__all__ = ["Poly", "Q", "max_terms"]

Q = Fraction


def max_terms() -> int:
    """Current monomial-count cap (env JETVAR_MAX_TERMS, default 10^7)."""
    return int(os.environ.get("JETVAR_MAX_TERMS", "10000000"))


def _as_q(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact kernel: rational coefficient expected, got {type(c)!r}")


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        # Caller guarantees canonical form; use the constructors below otherwise.
        self.terms = terms or {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls({})

    @classmethod
    def const(cls, c) -> "Poly":
        c = _as_q(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, v: tuple, exp: int = 1, coeff=1) -> "Poly":
        c = _as_q(coeff)
        if not c:
            return cls({})
        if exp == 0:
            return cls({(): c})
        return cls({((v, exp),): c})

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        return Poly(add_dicts(self.terms, other.terms, max_terms()))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = _coerce(other)
        return Poly(mul_dicts(self.terms, other.terms, max_terms()))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus ------------------------------------------------------

    def partial(self, v: tuple) -> "Poly":
        """Formal partial derivative; every other indeterminate is a constant."""
        out: dict = {}
        for m, c in self.terms.items():
            for i, (w, e) in enumerate(m):
                if w == v:
                    nm = m[:i] + m[i + 1:] if e == 1 else m[:i] + ((w, e - 1),) + m[i + 1:]
                    nc = out.get(nm, 0) + c * e
                    if nc:
                        out[nm] = nc
                    elif nm in out:
                        del out[nm]
                    break
        return Poly(out)

    def substitute(self, bindings: dict) -> "Poly":
        """Simultaneous one-pass substitution indeterminate -> Poly.

        A binding value may mention its own key (one-shot replacement, e.g.
        a -> t*a) but not another bound indeterminate.
        """
        bound = set(bindings)
        for v, p in bindings.items():
            hit = (p.indets() & bound) - {v}
            if hit:
                names = ", ".join(sorted(indet_str(w) for w in hit))
                raise CyclicSubstitution(
                    f"value bound to {indet_str(v)} mentions bound {names}")
        out = Poly.zero()
        powcache: dict = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                rep = bindings.get(v)
                if rep is None:
                    term = term * Poly.var(v, e)
                else:
                    key = (v, e)
                    pe = powcache.get(key)
                    if pe is None:
                        pe = rep ** e
                        powcache[key] = pe
                    term = term * pe
            out = out + term
        return out

    def integrate_t(self) -> "Poly":
        """Exact definite integral over t in [0,1]; the result is t-free."""
        out: dict = {}
        for m, c in self.terms.items():
            e = 0
            nm = m
            for i, (w, k) in enumerate(m):
                if w == T:
                    e = k
                    nm = m[:i] + m[i + 1:]
                    break
            nc = out.get(nm, 0) + c / (e + 1)
            if nc:
                out[nm] = nc
            elif nm in out:
                del out[nm]
        return Poly(out)

    def derive_symbols(self, lam: int, coordinate_kinds: frozenset) -> "Poly":
        """Chain-rule contribution of function symbols to an x-derivative.

        Sums partial(self, s) * s_{D+lam} over every indeterminate s in self
        whose kind is NOT in coordinate_kinds (and is not t).
        """
        out = Poly.zero()
        for s in self.indets():
            if s[0] in coordinate_kinds or s[0] == AUX:
                continue
            out = out + self.partial(s) * Poly.var(with_extra_deriv(s, lam))
        return out

    # -- queries -------------------------------------------------------

    def indets(self) -> set:
        vs: set = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return vs

    def degree_in(self, v: tuple) -> int:
        d = 0
        for m in self.terms:
            for w, e in m:
                if w == v and e > d:
                    d = e
        return d

    def evaluate(self, point: dict) -> Fraction:
        """Exact evaluation at a rational point (used by random-point oracles)."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val *= point[v] ** e
            total += val
        return total

    def term_count(self) -> int:
        return len(self.terms)

    # -- serialization ---------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        def key(m):
            return (-sum(e for _, e in m), m)
        parts = []
        for m in sorted(self.terms, key=key):
            c = self.terms[m]
            frag = [f"{c.numerator}/{c.denominator}"]
            for v, e in m:
                frag.append(indet_str(v) if e == 1 else f"{indet_str(v)}^{e}")
            parts.append("*".join(frag))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _coerce(other) -> Poly:
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)):
        return Poly.const(other)
    raise TypeError(f"cannot combine Poly with {type(other)!r}")
