"""Canonical curvature, characteristic forms, the transgression form with a
background section, and the resulting Lagrangian on the first jet chart."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

from .algebra import InvariantTensor, LieAlgebraData, check_invariant_tensor
from .errors import JetvarError
from .forms import Form, exterior_d, pullback, wedge
from .indets import T, bg, conn, x
from .jets import JetContext, horizontal_projection
from .polynomial import Poly, Q

__all__ = ["CSData", "canonical_curvature", "strength_horizontal",
           "characteristic_form", "characteristic_at_B", "background_curvature",
           "cs_form", "cs_lagrangian", "cs_lagrangian_direct"]


class CSData:
    """Inputs of one CS model: algebra, degree-k invariant tensor, background.

    base dimension is pinned to 2k-1.  h is an overall constant multiple on
    the invariant polynomial (the characteristic form gets h * b).  The
    ad-invariance residual of b is computed here and kept for reporting;
    construction proceeds either way so a bad tensor surfaces as a FAIL in
    the gauge-invariance check rather than an exception.
    """

    def __init__(self, algebra: LieAlgebraData, invariant: InvariantTensor,
                 k: int, background: str = "symbolic", h=1,
                 ctx: JetContext | None = None, matter_dim: int = 0):
        if k < 2:
            raise JetvarError("CS degree k must be >= 2")
        if invariant.degree != k:
            raise JetvarError("invariant tensor degree must equal k")
        if background not in ("zero", "symbolic"):
            raise JetvarError(f"unknown background {background!r}")
        self.algebra = algebra
        self.k = k
        self.n = 2 * k - 1
        self.background = background
        self.h = Q(h)
        self.b = invariant.scaled(self.h)
        self.invariance_residual = check_invariant_tensor(algebra, invariant)
        self.ctx = ctx or JetContext(self.n, algebra.dim, matter_dim=matter_dim,
                                     jet_order=3)
        if self.ctx.n != self.n or self.ctx.gauge_dim != algebra.dim:
            raise JetvarError("jet context does not match the CS data")

    # background coefficient: B^r_mu symbol, or 0 for the zero section
    def bg_poly(self, r: int, mu: int, D: tuple = ()) -> Poly:
        if self.background == "zero":
            return Poly.zero()
        return Poly.var(bg(r, mu, D))

    def potential_one_form(self, r: int) -> Form:
        ch = self.ctx.chart
        terms = {(x(mu),): Poly.var(conn(r, mu)) for mu in range(self.n)}
        return Form(ch, 1, terms)

    def background_one_form(self, r: int) -> Form:
        ch = self.ctx.chart
        terms = {}
        for mu in range(self.n):
            p = self.bg_poly(r, mu)
            if p:
                terms[(x(mu),)] = p
        return Form(ch, 1, terms)


def canonical_curvature(cs: CSData) -> list:
    """F^r = da^r_mu ^ dx^mu + 1/2 c^r_pq a^p_lam a^q_mu dx^lam ^ dx^mu."""
    ch = cs.ctx.chart
    m = cs.algebra.dim
    out = []
    for r in range(m):
        f = Form.zero(ch, 2)
        for mu in range(cs.n):
            f = f + wedge(Form.generator(ch, conn(r, mu)),
                          Form.generator(ch, x(mu)))
        for p in range(m):
            for q in range(m):
                cval = cs.algebra.bracket_const(r, p, q)
                if cval:
                    f = f + wedge(cs.potential_one_form(p),
                                  cs.potential_one_form(q)).scale(cval / 2)
        out.append(f)
    return out


def strength_horizontal(cs: CSData) -> list:
    """Componentwise h0 of the canonical curvature (jet order >= 1)."""
    return [horizontal_projection(f, cs.ctx) for f in canonical_curvature(cs)]


def background_curvature(cs: CSData) -> list:
    """F_B^r as a 2-form on X: dB^r + 1/2 c^r_pq B^p B^q."""
    ch = cs.ctx.chart
    m = cs.algebra.dim
    out = []
    for r in range(m):
        f = Form.zero(ch, 2)
        for mu in range(cs.n):
            p = cs.bg_poly(r, mu)
            if p:
                f = f + wedge(exterior_d(Form.from_poly(ch, p)),
                              Form.generator(ch, x(mu)))
        for p_ in range(m):
            for q in range(m):
                cval = cs.algebra.bracket_const(r, p_, q)
                if cval:
                    f = f + wedge(cs.background_one_form(p_),
                                  cs.background_one_form(q)).scale(cval / 2)
        out.append(f)
    return out


def _invariant_contraction(cs: CSData, factors_fn) -> Form:
    """sum over ordered index tuples of b_{r1..rk} factor(r1) ^ ... ^ factor(rk),
    using multiset enumeration with multinomial weights (all factors are even
    or the first slot is handled by the caller)."""
    ch = cs.ctx.chart
    m = cs.algebra.dim
    k = cs.k
    out = Form.zero(ch, 0)
    first = True
    for idx in combinations_with_replacement(range(m), k):
        bval = cs.b.value(idx)
        if not bval:
            continue
        counts: dict = {}
        for i in idx:
            counts[i] = counts.get(i, 0) + 1
        mult = factorial(k)
        for c in counts.values():
            mult //= factorial(c)
        term = factors_fn(idx[0])
        for i in idx[1:]:
            term = wedge(term, factors_fn(i))
        term = term.scale(bval * mult)
        out = term if first else out + term
        first = False
    if first:
        return Form.zero(ch, 2 * k)
    return out


def characteristic_form(cs: CSData) -> Form:
    """P_2k(F) = b_{r1..rk} F^{r1} ^ ... ^ F^{rk}; closed and gauge-invariant
    when b is ad-invariant."""
    F = canonical_curvature(cs)
    return _invariant_contraction(cs, lambda r: F[r])


def characteristic_at_B(cs: CSData) -> Form:
    """Pull-back of the characteristic form along the background section."""
    P = characteristic_form(cs)
    bindings = {conn(r, mu): cs.bg_poly(r, mu)
                for r in range(cs.algebra.dim) for mu in range(cs.n)}
    return pullback(P, bindings)


def _interp_coeff(cs: CSData, r: int, mu: int) -> Poly:
    """t a^r_mu + (1-t) B^r_mu."""
    t = Poly.var(T)
    return t * Poly.var(conn(r, mu)) + (Poly.const(1) - t) * cs.bg_poly(r, mu)


def _interp_one_form(cs: CSData, r: int) -> Form:
    ch = cs.ctx.chart
    terms = {}
    for mu in range(cs.n):
        p = _interp_coeff(cs, r, mu)
        if p:
            terms[(x(mu),)] = p
    return Form(ch, 1, terms)


def _interp_curvature(cs: CSData) -> list:
    """F^r(t,B) = d(ta + (1-t)B) ^ dx (t held constant) + 1/2 c (ta+(1-t)B)^2."""
    ch = cs.ctx.chart
    m = cs.algebra.dim
    t = Poly.var(T)
    one_minus_t = Poly.const(1) - t
    out = []
    for r in range(m):
        f = Form.zero(ch, 2)
        for mu in range(cs.n):
            da = wedge(Form.generator(ch, conn(r, mu)), Form.generator(ch, x(mu)))
            f = f + da.map_coefficients(lambda p: p * t)
            bp = cs.bg_poly(r, mu)
            if bp:
                dB = wedge(exterior_d(Form.from_poly(ch, bp)),
                           Form.generator(ch, x(mu)))
                f = f + dB.map_coefficients(lambda p: p * one_minus_t)
        for p_ in range(m):
            for q in range(m):
                cval = cs.algebra.bracket_const(r, p_, q)
                if cval:
                    f = f + wedge(_interp_one_form(cs, p_),
                                  _interp_one_form(cs, q)).scale(cval / 2)
        out.append(f)
    return out


def _transgression_integrand(cs: CSData, curv: list) -> Form:
    """b_{r1..rk} (a-B)^{r1} ^ curv^{r2}(t) ^ ... ^ curv^{rk}(t), summed over
    ordered tuples (the r1 slot is a 1-form, the rest commute)."""
    ch = cs.ctx.chart
    m = cs.algebra.dim
    k = cs.k
    out = Form.zero(ch, 2 * k - 1)
    diff = [cs.potential_one_form(r) - cs.background_one_form(r) for r in range(m)]
    for r1 in range(m):
        for rest in combinations_with_replacement(range(m), k - 1):
            bval = cs.b.value((r1,) + rest)
            if not bval:
                continue
            counts: dict = {}
            for i in rest:
                counts[i] = counts.get(i, 0) + 1
            mult = factorial(k - 1)
            for c in counts.values():
                mult //= factorial(c)
            term = diff[r1]
            for i in rest:
                term = wedge(term, curv[i])
            out = out + term.scale(bval * mult)
    return out


def cs_form(cs: CSData) -> Form:
    """S_{2k-1}(B) = k * integral over t in [0,1] of the transgression
    integrand; the result is t-free and lives on the order-0 chart."""
    integrand = _transgression_integrand(cs, _interp_curvature(cs))
    return integrand.map_coefficients(lambda p: p.integrate_t() * cs.k)


def cs_lagrangian(cs: CSData) -> Form:
    """Horizontal projection of the CS form: the Lagrangian density form on J1."""
    return horizontal_projection(cs_form(cs), cs.ctx)


def _interp_curvature_horizontal(cs: CSData) -> list:
    """The displayed first-order coefficients: t a^r_{lam;mu} + (1-t) dB, built
    directly from jet coordinates rather than through h0 (cross-check route)."""
    ch = cs.ctx.chart
    m = cs.algebra.dim
    t = Poly.var(T)
    one_minus_t = Poly.const(1) - t
    out = []
    for r in range(m):
        f = Form.zero(ch, 2)
        for lam in range(cs.n):
            for mu in range(cs.n):
                coeff = t * Poly.var(conn(r, mu, (lam,))) \
                    + one_minus_t * cs.bg_poly(r, mu, (lam,))
                if coeff:
                    f = f + wedge(Form(ch, 1, {(x(lam),): coeff}),
                                  Form.generator(ch, x(mu)))
        for p_ in range(m):
            for q in range(m):
                cval = cs.algebra.bracket_const(r, p_, q)
                if cval:
                    f = f + wedge(_interp_one_form(cs, p_),
                                  _interp_one_form(cs, q)).scale(cval / 2)
        out.append(f)
    return out


def cs_lagrangian_direct(cs: CSData) -> Form:
    """Independent construction of the horizontal CS Lagrangian via the
    explicit first-order formula; must agree with cs_lagrangian exactly."""
    integrand = _transgression_integrand(cs, _interp_curvature_horizontal(cs))
    return integrand.map_coefficients(lambda p: p.integrate_t() * cs.k)
