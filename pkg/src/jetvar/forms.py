"""Graded exterior algebra with Poly coefficients on a declared chart.

A chart fixes the ordered list of coordinates whose differentials exist as
generators.  Function symbols (B, xi families) are deliberately NOT chart
coordinates: they have no differentials of their own, and the exterior
derivative turns their variation into dx terms via the formal x-derivative
rule s -> s_{D+lam} dx^lam.

Form terms are keyed by strictly increasing tuples of coordinate
indeterminates; antisymmetry is normalized away at construction time.
"""

from __future__ import annotations

from .errors import AntisymmetryViolation, JetvarError
from .indets import AUX, CONN, MATTER, T, X, indet_str, is_field_jet
from .polynomial import Poly

__all__ = ["Chart", "Form", "wedge", "exterior_d", "contract",
           "lie_derivative_form", "apply_derivation", "pullback"]

# Kinds whose differentials are generators on every chart built here.
COORDINATE_KINDS = frozenset({X, CONN, MATTER, AUX})


class Chart:
    """Ordered coordinate list plus base dimension and jet order."""

    __slots__ = ("coords", "pos", "n", "jet_order", "coord_set")

    def __init__(self, coords, n: int, jet_order: int):
        coords = tuple(sorted(coords))
        if len(set(coords)) != len(coords):
            raise JetvarError("duplicate chart coordinates")
        self.coords = coords
        self.pos = {c: i for i, c in enumerate(coords)}
        self.coord_set = frozenset(coords)
        self.n = n
        self.jet_order = jet_order

    def dx(self, lam: int) -> tuple:
        return (X, lam)

    def __eq__(self, other):
        return isinstance(other, Chart) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)


def _merge_tuples(ta: tuple, tb: tuple):
    """Merge two strictly increasing tuples; returns (merged, sign) or None."""
    if not ta:
        return tb, 1
    if not tb:
        return ta, 1
    out = []
    sign = 1
    i = j = 0
    na, nb = len(ta), len(tb)
    while i < na and j < nb:
        if ta[i] == tb[j]:
            return None
        if ta[i] < tb[j]:
            out.append(ta[i])
            i += 1
        else:
            out.append(tb[j])
            j += 1
            if (na - i) & 1:
                sign = -sign
    out.extend(ta[i:])
    out.extend(tb[j:])
    return tuple(out), sign


class Form:
    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms: dict | None = None):
        self.chart = chart
        self.degree = degree
        if terms:
            for dcs in terms:
                if any(dcs[i] >= dcs[i + 1] for i in range(len(dcs) - 1)):
                    raise AntisymmetryViolation(
                        f"generator tuple not strictly increasing: {dcs}")
        self.terms = terms or {}

    @classmethod
    def zero(cls, chart: Chart, degree: int = 0) -> "Form":
        return cls(chart, degree)

    @classmethod
    def from_poly(cls, chart: Chart, p: Poly) -> "Form":
        return cls(chart, 0, {(): p} if p else {})

    @classmethod
    def generator(cls, chart: Chart, c: tuple) -> "Form":
        """The 1-form dc for a chart coordinate c."""
        if c not in chart.coord_set:
            raise JetvarError(f"{indet_str(c)} is not a chart coordinate")
        return cls(chart, 1, {(c,): Poly.const(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return sum(p.term_count() for p in self.terms.values())

    def _check(self, other: "Form"):
        if self.chart != other.chart:
            raise JetvarError("forms live on different charts")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise JetvarError("degree mismatch in form addition")
        out = dict(self.terms)
        for dcs, p in other.terms.items():
            s = out.get(dcs)
            s = p if s is None else s + p
            if s:
                out[dcs] = s
            elif dcs in out:
                del out[dcs]
        return Form(self.chart, self.degree, out)

    def __neg__(self) -> "Form":
        return Form(self.chart, self.degree, {d: -p for d, p in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        out = {}
        for d, p in self.terms.items():
            q = p * c
            if q:
                out[d] = q
        return Form(self.chart, self.degree, out)

    def __eq__(self, other):
        return (isinstance(other, Form) and self.chart == other.chart
                and self.terms == other.terms)

    __hash__ = None  # mutable terms dict; identity hashing would mislead

    def coefficient(self, dcs: tuple) -> Poly:
        return self.terms.get(tuple(dcs), Poly.zero())

    def map_coefficients(self, fn) -> "Form":
        out = {}
        for d, p in self.terms.items():
            q = fn(p)
            if q:
                out[d] = q
        return Form(self.chart, self.degree, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for dcs in sorted(self.terms):
            p = self.terms[dcs]
            if dcs:
                gens = "∧".join("d" + indet_str(c) for c in dcs)
                parts.append(f"({p}) {gens}")
            else:
                parts.append(f"({p})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Form(deg={self.degree}, {self})"


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    out: dict = {}
    for ta, fa in a.terms.items():
        for tb, fb in b.terms.items():
            merged = _merge_tuples(ta, tb)
            if merged is None:
                continue
            dcs, sign = merged
            p = fa * fb if sign > 0 else -(fa * fb)
            s = out.get(dcs)
            s = p if s is None else s + p
            if s:
                out[dcs] = s
            elif dcs in out:
                del out[dcs]
    return Form(a.chart, a.degree + b.degree, out)


def _d_coefficient(f: Poly, chart: Chart) -> Form:
    """Exterior derivative of a 0-form: chart-coordinate partials plus the
    function-symbol x-derivative rule."""
    out = Form.zero(chart, 1)
    terms: dict = {}
    for v in f.indets():
        if v in chart.coord_set:
            df = f.partial(v)
            if df:
                terms[(v,)] = terms.get((v,), Poly.zero()) + df
    for lam in range(chart.n):
        g = f.derive_symbols(lam, COORDINATE_KINDS)
        if g:
            key = (chart.dx(lam),)
            s = terms.get(key, Poly.zero()) + g
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
    out.terms = {k: p for k, p in terms.items() if p}
    return out


def exterior_d(a: Form) -> Form:
    out = Form.zero(a.chart, a.degree + 1)
    for dcs, f in a.terms.items():
        df = _d_coefficient(f, a.chart)
        for (c,), g in df.terms.items():
            merged = _merge_tuples((c,), dcs)
            if merged is None:
                continue
            key, sign = merged
            p = g if sign > 0 else -g
            s = out.terms.get(key)
            s = p if s is None else s + p
            if s:
                out.terms[key] = s
            elif key in out.terms:
                del out.terms[key]
    return out


def contract(X: dict, a: Form) -> Form:
    """Interior product with the vector field of components X: coord -> Poly."""
    if a.degree == 0:
        return Form.zero(a.chart, 0)
    out = Form.zero(a.chart, a.degree - 1)
    for dcs, f in a.terms.items():
        for j, c in enumerate(dcs):
            comp = X.get(c)
            if not comp:
                continue
            p = comp * f
            if j & 1:
                p = -p
            key = dcs[:j] + dcs[j + 1:]
            s = out.terms.get(key)
            s = p if s is None else s + p
            if s:
                out.terms[key] = s
            elif key in out.terms:
                del out.terms[key]
    return out


def lie_derivative_form(X: dict, a: Form) -> Form:
    """Cartan formula: L_X = X . d + d . X ."""
    return contract(X, exterior_d(a)) + exterior_d(contract(X, a))


def apply_derivation(X: dict, f: Poly) -> Poly:
    """The vector field acting on a scalar: sum X^c partial_c f."""
    out = Poly.zero()
    for c, comp in X.items():
        df = f.partial(c)
        if df:
            out = out + comp * df
    return out


def pullback(a: Form, bindings: dict, target_chart: Chart | None = None) -> Form:
    """Pull back along the section substituting fiber coordinates by bindings.

    Coefficients get the polynomial substitution; each differential dc of a
    bound coordinate becomes the exterior derivative of its binding value.
    Unbound coordinates (x, t) pass through.
    """
    chart = target_chart or a.chart
    out = Form.zero(chart, a.degree)
    for dcs, f in a.terms.items():
        acc = Form.from_poly(chart, f.substitute(bindings))
        for c in dcs:
            if acc.is_zero():
                break
            if c in bindings:
                drep = _d_coefficient(bindings[c], chart)
                acc = wedge(acc, drep)
            else:
                acc = wedge(acc, Form.generator(chart, c))
        if not acc.is_zero():
            out = out + acc
    return out
