"""Euler-Lagrange operator (with an independent interpolation oracle), the
first variational formula, Noether currents, the fiberwise homotopy, the
boundary term sigma, and the conservation law."""

import random
from fractions import Fraction
from itertools import product

import pytest

from jetvar.algebra import builtin_algebra, builtin_invariant, gauge_generator
from jetvar.chern_simons import CSData, cs_form, cs_lagrangian
from jetvar.errors import JetvarError, NonzeroResidual, NotClosed, NotInvariant
from jetvar.forms import Form, exterior_d, wedge
from jetvar.indets import conn, gauge, matter, with_extra_deriv, x
from jetvar.jets import (JetContext, horizontal_differential,
                         horizontal_projection)
from jetvar.polynomial import Poly, Q
from jetvar.random_inputs import random_density, random_form, \
    random_vertical_field
from jetvar.variational import (Current, Lagrangian, conservation_check,
                                euler_lagrange, fiber_homotopy,
                                first_variational_check, invariant_sector,
                                lie_derivative_lagrangian, noether_current,
                                poincare_cartan, sigma_boundary_term)

CTX2 = JetContext(2, 1, matter_dim=1, jet_order=2)


# -- independent Euler-Lagrange oracle ---------------------------------
#
# Differentiation by exact univariate interpolation of the evaluation map:
# sample the density along one variable at deg+1 rational nodes, solve the
# Vandermonde system over Fraction, and read off the derivative.  Total
# derivatives are assembled by the chain rule over sampled values only, so
# nothing here reuses Poly.partial or total_derivative.

def _solve_vandermonde(nodes, values):
    n = len(nodes)
    rows = [[Fraction(t) ** i for i in range(n)] + [values[j]]
            for j, t in enumerate(nodes)]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def _num_partial(fun, point, v, deg=6):
    nodes = [Fraction(j) for j in range(deg + 1)]
    values = []
    saved = point[v]
    for t in nodes:
        point[v] = t
        values.append(fun(point))
    point[v] = saved
    coeffs = _solve_vandermonde(nodes, values)
    x0 = point[v]
    return sum(i * c * x0 ** (i - 1) for i, c in enumerate(coeffs) if i)


class _LazyPoint(dict):
    def __init__(self, rng):
        super().__init__()
        self._rng = rng

    def __missing__(self, v):
        val = Fraction(self._rng.randint(-4, 4), self._rng.randint(1, 3))
        self[v] = val
        return val


def _oracle_el_value(density, ctx, i, point):
    fun = density.evaluate
    total = _num_partial(fun, point, i)
    variables = sorted(density.indets())
    for lam in range(ctx.n):
        jet = with_extra_deriv(i, lam)

        def dldj(q, jet=jet):
            return _num_partial(fun, q, jet)

        # d_lam of dldj via the chain rule on sampled values
        d = _num_partial(dldj, point, x(lam))
        for v in variables:
            if v[0] == 0:  # x-coordinates were handled above
                continue
            # field jets and function symbols gain a derivative index
            d += _num_partial(dldj, point, v) * point[with_extra_deriv(v, lam)]
        total -= d
    return total


def test_euler_lagrange_matches_the_interpolation_oracle():
    rng = random.Random(11)
    for trial in range(8):
        density = random_density(CTX2, rng)
        el = euler_lagrange(Lagrangian(CTX2, density), CTX2)
        point = _LazyPoint(random.Random(100 + trial))
        for i in CTX2.field_coords(0):
            got = el[i].evaluate(point)
            want = _oracle_el_value(density, CTX2, i, point)
            assert got == want


def test_euler_lagrange_of_a_harmonic_density():
    z = matter(0)
    density = sum((Poly.var(matter(0, (lam,))) ** 2 for lam in range(2)),
                  Poly.zero())
    el = euler_lagrange(Lagrangian(CTX2, density), CTX2)
    expected = -2 * (Poly.var(matter(0, (0, 0))) + Poly.var(matter(0, (1, 1))))
    assert el[z] == expected


def test_lagrangian_rejects_higher_order_densities():
    with pytest.raises(JetvarError):
        Lagrangian(CTX2, Poly.var(matter(0, (0, 0))))


def test_poincare_cartan_projects_back_to_the_lagrangian():
    rng = random.Random(12)
    for _ in range(6):
        L = Lagrangian(CTX2, random_density(CTX2, rng))
        assert (horizontal_projection(poincare_cartan(L, CTX2), CTX2)
                - L.form()).is_zero()


def test_noether_current_example():
    # J^lam = u^i partial^lam_i of the density
    density = Poly.var(matter(0, (0,))) * Poly.var(matter(0, (1,)))
    u = {matter(0): Poly.var(matter(0))}
    J = noether_current(Lagrangian(CTX2, density), u, CTX2)
    assert J.components[0] == Poly.var(matter(0)) * Poly.var(matter(0, (1,)))
    assert J.components[1] == Poly.var(matter(0)) * Poly.var(matter(0, (0,)))


def test_first_variational_formula_on_random_instances():
    rng = random.Random(13)
    ctxs = [JetContext(n, 2, matter_dim=1, jet_order=2) for n in (1, 2, 3)]
    for trial in range(30):
        ctx = ctxs[trial % 3]
        L = Lagrangian(ctx, random_density(ctx, rng))
        u = random_vertical_field(ctx, rng)
        report = first_variational_check(L, u, ctx)
        assert report.passed, report.residual


def test_first_variational_detects_a_broken_boundary_term():
    # negative control: scale the current and recheck the decomposition
    rng = random.Random(14)
    L = Lagrangian(CTX2, random_density(CTX2, rng))
    u = random_vertical_field(CTX2, rng)
    lie = lie_derivative_lagrangian(L, u, CTX2)
    el = euler_lagrange(L, CTX2)
    s = Poly.zero()
    for i, ui in u.items():
        s = s + ui * el[i]
    el_form = CTX2.volume_form().map_coefficients(lambda p: p * s)
    bad = noether_current(L, u, CTX2).form().scale(Q(2))
    residual = lie - el_form - horizontal_differential(bad, CTX2)
    assert not residual.is_zero()


def test_variational_triviality_of_horizontal_projections_of_exact_forms():
    # delta(h0(d eta)) = 0: exact n-forms have empty field equations
    rng = random.Random(15)
    from jetvar.indets import is_field_jet, multi_index
    from jetvar.random_inputs import random_poly
    pool0 = [c for c in CTX2.chart.coords
             if c[0] == 0 or (is_field_jet(c) and not multi_index(c))]
    for _ in range(6):
        # order-0 coefficients keep h0(d eta) first-order
        gens = tuple(sorted(rng.sample(pool0, CTX2.n - 1)))
        eta = Form(CTX2.chart, CTX2.n - 1,
                   {gens: random_poly(pool0, rng, max_monomials=3)})
        L = Lagrangian.from_horizontal_form(
            CTX2, horizontal_projection(exterior_d(eta), CTX2))
        el = euler_lagrange(L, CTX2)
        assert all(not v for v in el.values()), str(L.density)


# -- homotopy primitive -------------------------------------------------


def _su2_model(background="symbolic"):
    g = builtin_algebra("su2")
    return CSData(g, builtin_invariant("killing", g, 2), 2,
                  background=background)


def test_fiber_homotopy_recovers_a_primitive():
    cs = _su2_model("zero")
    ch = cs.ctx.chart
    alpha = wedge(Form(ch, 0, {(): Poly.var(conn(0, 0))}),
                  wedge(Form.generator(ch, conn(1, 1)),
                        Form.generator(ch, x(2))))
    omega = exterior_d(alpha)
    psi = fiber_homotopy(omega, cs)
    assert (exterior_d(psi) - omega).is_zero()


def test_fiber_homotopy_rejects_non_closed_forms():
    cs = _su2_model("zero")
    ch = cs.ctx.chart
    not_closed = wedge(Form(ch, 0, {(): Poly.var(conn(0, 0))}),
                       Form.generator(ch, conn(1, 1)))
    with pytest.raises(NotClosed):
        fiber_homotopy(not_closed, cs)


def test_fiber_homotopy_rejects_forms_alive_on_the_section():
    cs = _su2_model("zero")
    ch = cs.ctx.chart
    base_area = wedge(Form.generator(ch, x(0)), Form.generator(ch, x(1)))
    with pytest.raises(NonzeroResidual):
        fiber_homotopy(base_area, cs)


# -- sigma and the conservation law -------------------------------------


def test_sigma_satisfies_its_defining_identity():
    cs = _su2_model()
    xi_C = gauge_generator(cs.algebra, cs.ctx)
    S = cs_form(cs)
    sigma = sigma_boundary_term(cs, xi_C, S=S)
    L = Lagrangian.from_horizontal_form(
        cs.ctx, horizontal_projection(S, cs.ctx))
    lie = lie_derivative_lagrangian(L, xi_C, cs.ctx)
    assert (horizontal_differential(sigma, cs.ctx) - lie).is_zero()


@pytest.mark.parametrize("alg,inv,k", [("u1", "unit", 2), ("su2", "killing", 2)])
def test_conservation_law(alg, inv, k):
    g = builtin_algebra(alg)
    cs = CSData(g, builtin_invariant(inv, g, k), k)
    xi_C = gauge_generator(g, cs.ctx)
    S = cs_form(cs)
    sigma = sigma_boundary_term(cs, xi_C, S=S)
    L = Lagrangian.from_horizontal_form(
        cs.ctx, horizontal_projection(S, cs.ctx))
    report, modified = conservation_check(L, xi_C, sigma, cs.ctx)
    assert report.passed, report.residual
    assert modified.degree == cs.n - 1


def test_conservation_with_explicit_gauge_parameters():
    g = builtin_algebra("u1")
    cs = CSData(g, builtin_invariant("unit", g, 2), 2)
    params = [Poly.var(x(0)) * Poly.var(x(1)) + Poly.var(x(2), 2)]
    xi_C = gauge_generator(g, cs.ctx, params=params)
    S = cs_form(cs)
    sigma = sigma_boundary_term(cs, xi_C, params=params, S=S)
    L = Lagrangian.from_horizontal_form(
        cs.ctx, horizontal_projection(S, cs.ctx))
    report, _ = conservation_check(L, xi_C, sigma, cs.ctx)
    assert report.passed, report.residual


def test_zero_gauge_parameters_give_a_zero_current():
    g = builtin_algebra("su2")
    cs = CSData(g, builtin_invariant("killing", g, 2), 2)
    params = [Poly.zero()] * 3
    xi_C = gauge_generator(g, cs.ctx, params=params)
    sigma = sigma_boundary_term(cs, xi_C, params=params)
    L = Lagrangian.from_horizontal_form(cs.ctx, cs_lagrangian(cs))
    report, modified = conservation_check(L, xi_C, sigma, cs.ctx)
    assert report.passed
    assert modified.is_zero()


# -- gauge-invariant sector ---------------------------------------------


def _matter_model():
    g = builtin_algebra("su2")
    ctx = JetContext(3, 3, matter_dim=3, jet_order=3)
    cs = CSData(g, builtin_invariant("killing", g, 2), 2, ctx=ctx)
    return g, ctx, cs


def _yang_mills_density(g, ctx, kappa):
    def strength(m, al, be):
        f = Poly.var(conn(m, be, (al,))) - Poly.var(conn(m, al, (be,)))
        for p in range(g.dim):
            for q in range(g.dim):
                cval = g.bracket_const(m, p, q)
                if cval:
                    f = f + cval * Poly.var(conn(p, al)) * Poly.var(conn(q, be))
        return f

    dens = Poly.zero()
    for m, n_ in product(range(g.dim), repeat=2):
        if not kappa[m][n_]:
            continue
        for al, be in product(range(ctx.n), repeat=2):
            dens = dens + kappa[m][n_] * strength(m, al, be) * strength(n_, al, be)
    return dens


def _adjoint_variation(g):
    out = {}
    for m in range(g.dim):
        comp = Poly.zero()
        for p in range(g.dim):
            for q in range(g.dim):
                cval = g.bracket_const(m, p, q)
                if cval:
                    comp = comp + cval * Poly.var(matter(p)) * Poly.var(gauge(q))
        out[matter(m)] = comp
    return out


def test_invariant_sector_conserves_the_combined_current():
    from jetvar.algebra import killing_form
    g, ctx, cs = _matter_model()
    kappa = killing_form(g)
    mass = sum((kappa[m][n_] * Poly.var(matter(m)) * Poly.var(matter(n_))
                for m in range(3) for n_ in range(3) if kappa[m][n_]),
               Poly.zero())
    L_inv = Lagrangian(ctx, _yang_mills_density(g, ctx, kappa) + mass)
    xi_C = gauge_generator(g, ctx)
    sigma = sigma_boundary_term(cs, xi_C)
    report, modified = invariant_sector(L_inv, _adjoint_variation(g), xi_C,
                                        cs, sigma)
    assert report.passed, report.residual
    assert not modified.is_zero()


def test_invariant_sector_rejects_non_invariant_lagrangians():
    g, ctx, cs = _matter_model()
    L_bad = Lagrangian(ctx, Poly.var(matter(0), 2))
    xi_C = gauge_generator(g, ctx)
    sigma = sigma_boundary_term(cs, xi_C)
    with pytest.raises(NotInvariant):
        invariant_sector(L_bad, _adjoint_variation(g), xi_C, cs, sigma)
