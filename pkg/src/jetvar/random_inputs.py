"""Seeded random polynomials, Lagrangians, forms, and vertical fields for
property tests and the first-variational self-test."""

from __future__ import annotations

import random
from fractions import Fraction

from .forms import Form
from .indets import is_field_jet, multi_index
from .jets import JetContext
from .polynomial import Poly

__all__ = ["random_poly", "random_density", "random_vertical_field",
           "random_form"]


def random_coeff(rng: random.Random) -> Fraction:
    num = rng.randint(-6, 6)
    if num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 4))


def random_poly(pool: list, rng: random.Random, max_monomials: int = 3,
                max_exp: int = 2) -> Poly:
    out = Poly.zero()
    for _ in range(rng.randint(1, max_monomials)):
        term = Poly.const(random_coeff(rng))
        for _ in range(rng.randint(0, 2)):
            v = rng.choice(pool)
            term = term * Poly.var(v, rng.randint(1, max_exp))
        out = out + term
    return out


def _order01_pool(ctx: JetContext) -> list:
    pool = [c for c in ctx.chart.coords
            if c[0] == 0 or (is_field_jet(c) and len(multi_index(c)) <= 1)]
    return pool


def random_density(ctx: JetContext, rng: random.Random) -> Poly:
    """A first-order polynomial Lagrangian density."""
    return random_poly(_order01_pool(ctx), rng, max_monomials=4)


def random_vertical_field(ctx: JetContext, rng: random.Random) -> dict:
    """Components u^i(x, fields) on the order-0 field coordinates."""
    pool = [c for c in ctx.chart.coords
            if c[0] == 0 or (is_field_jet(c) and not multi_index(c))]
    out = {}
    for i in ctx.field_coords(0):
        if rng.random() < 0.25:
            continue
        out[i] = random_poly(pool, rng, max_monomials=2)
    return out


def random_form(ctx: JetContext, degree: int, rng: random.Random,
                max_terms: int = 3, pool: list | None = None) -> Form:
    """Random form whose generators are drawn from pool (default: x and
    order-0 fields) with random polynomial coefficients."""
    gens = pool or [c for c in ctx.chart.coords
                    if c[0] == 0 or (is_field_jet(c) and not multi_index(c))]
    coeff_pool = _order01_pool(ctx)
    out = Form.zero(ctx.chart, degree)
    for _ in range(rng.randint(1, max_terms)):
        if degree > len(gens):
            break
        dcs = tuple(sorted(rng.sample(gens, degree)))
        p = random_poly(coeff_pool, rng, max_monomials=2)
        out = out + Form(ctx.chart, degree, {dcs: p} if p else {})
    return out
