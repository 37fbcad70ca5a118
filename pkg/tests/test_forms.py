"""Exterior algebra laws: wedge grading, d^2 = 0, Leibniz, interior product,
Cartan's formula, pullback functoriality."""

import random

import pytest

from jetvar.errors import AntisymmetryViolation, JetvarError
from jetvar.forms import (Form, contract, exterior_d, lie_derivative_form,
                          pullback, wedge)
from jetvar.indets import bg, conn, gauge, x
from jetvar.jets import JetContext
from jetvar.polynomial import Poly, Q
from jetvar.random_inputs import random_form, random_poly

CTX = JetContext(2, 1, jet_order=2)
CH = CTX.chart


def _forms(rng, degree, count=6):
    return [random_form(CTX, degree, rng) for _ in range(count)]


def test_wedge_graded_commutativity(rng):
    for p in (1, 2):
        for q in (1, 2):
            for a, b in zip(_forms(rng, p), _forms(rng, q)):
                sign = -1 if (p * q) % 2 else 1
                assert (wedge(a, b) - wedge(b, a).scale(Q(sign))).is_zero()


def test_wedge_associativity_and_bilinearity(rng):
    for a, b, c in zip(_forms(rng, 1), _forms(rng, 1), _forms(rng, 1)):
        assert (wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).is_zero()
        assert (wedge(a + b, c) - wedge(a, c) - wedge(b, c)).is_zero()


def test_one_form_squares_to_zero(rng):
    for a in _forms(rng, 1):
        assert wedge(a, a).is_zero()


def test_duplicate_generator_rejected():
    with pytest.raises(JetvarError):
        Form(CH, 2, {(x(0), x(0)): Poly.const(1)})
    with pytest.raises(JetvarError):
        Form(CH, 2, {(x(1), x(0)): Poly.const(1)})


def test_d_squared_is_zero(rng):
    for degree in (0, 1, 2):
        for a in _forms(rng, degree):
            assert exterior_d(exterior_d(a)).is_zero()


def test_d_squared_is_zero_with_function_symbols():
    # B and xi are not chart coordinates: d sends them to dx terms
    f = Poly.var(bg(0, 0)) * Poly.var(gauge(0)) + Poly.var(bg(0, 1), 2)
    a = Form.from_poly(CH, f)
    assert exterior_d(exterior_d(a)).is_zero()
    b = wedge(exterior_d(a), Form.generator(CH, conn(0, 0)))
    assert exterior_d(exterior_d(b)).is_zero()


def test_leibniz_rule(rng):
    for p in (0, 1):
        for a, b in zip(_forms(rng, p), _forms(rng, 1)):
            sign = Q(-1 if p % 2 else 1)
            lhs = exterior_d(wedge(a, b))
            rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)).scale(sign)
            assert (lhs - rhs).is_zero()


def _vector(rng):
    pool = [c for c in CH.coords]
    return {c: random_poly(pool, rng, max_monomials=2) for c in
            rng.sample(pool, 3)}


def test_contraction_is_an_antiderivation(rng):
    for p in (1, 2):
        X = _vector(rng)
        for a, b in zip(_forms(rng, p), _forms(rng, 1)):
            sign = Q(-1 if p % 2 else 1)
            lhs = contract(X, wedge(a, b))
            rhs = wedge(contract(X, a), b) + wedge(a, contract(X, b)).scale(sign)
            assert (lhs - rhs).is_zero()


def test_contraction_squares_to_zero(rng):
    X = _vector(rng)
    for a in _forms(rng, 2):
        assert contract(X, contract(X, a)).is_zero()


def test_cartan_formula(rng):
    for degree in (0, 1, 2):
        X = _vector(rng)
        for a in _forms(rng, degree, count=4):
            lie = lie_derivative_form(X, a)
            homotopy = contract(X, exterior_d(a)) + exterior_d(contract(X, a))
            assert (lie - homotopy).is_zero()


def test_lie_derivative_commutes_with_d(rng):
    X = _vector(rng)
    for a in _forms(rng, 1, count=4):
        lhs = lie_derivative_form(X, exterior_d(a))
        rhs = exterior_d(lie_derivative_form(X, a))
        assert (lhs - rhs).is_zero()


def test_pullback_commutes_with_wedge(rng):
    bindings = {conn(0, 0): Poly.var(bg(0, 0)),
                conn(0, 1): Poly.var(x(0)) * Poly.var(x(1))}
    for a, b in zip(_forms(rng, 1), _forms(rng, 1)):
        lhs = pullback(wedge(a, b), bindings)
        rhs = wedge(pullback(a, bindings), pullback(b, bindings))
        assert (lhs - rhs).is_zero()


def test_pullback_commutes_with_d(rng):
    bindings = {conn(0, 0): Poly.var(x(0), 2),
                conn(0, 1): Poly.var(bg(0, 1))}
    for a in _forms(rng, 1, count=4):
        lhs = pullback(exterior_d(a), bindings)
        rhs = exterior_d(pullback(a, bindings))
        assert (lhs - rhs).is_zero()
