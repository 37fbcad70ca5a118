"""Jet-bundle operators: total derivatives, horizontal projection and
differential, contact forms, prolongation of vertical fields."""

from __future__ import annotations

from itertools import combinations_with_replacement

from .errors import JetOrderExceeded, JetvarError
from .forms import COORDINATE_KINDS, Chart, Form, wedge
from .indets import (AUX, CONN, MATTER, T, X, conn, indet_str, is_field_jet,
                     matter, multi_index, with_extra_deriv, x)
from .polynomial import Poly

__all__ = ["JetContext", "total_derivative", "horizontal_projection",
           "horizontal_differential", "contact_form", "prolong"]


class JetContext:
    """Base dimension, field content, jet order, and the generated chart.

    The connection block contributes a^r_mu for r < gauge_dim, mu < n; the
    optional matter block contributes z^A for A < matter_dim.  All jet
    coordinates with |D| <= jet_order are chart coordinates, as is the
    auxiliary scalar t (so the transgression homotopy has a dt generator).
    """

    def __init__(self, n: int, gauge_dim: int, matter_dim: int = 0,
                 jet_order: int = 3):
        if jet_order < 1:
            raise JetvarError("jet order must be >= 1")
        self.n = n
        self.gauge_dim = gauge_dim
        self.matter_dim = matter_dim
        self.jet_order = jet_order
        coords = [x(lam) for lam in range(n)]
        coords.append(T)
        for size in range(jet_order + 1):
            for D in combinations_with_replacement(range(n), size):
                for r in range(gauge_dim):
                    for mu in range(n):
                        coords.append(conn(r, mu, D))
                for A in range(matter_dim):
                    coords.append(matter(A, D))
        self.chart = Chart(coords, n, jet_order)

    def field_coords(self, order: int = 0) -> list:
        """Field coordinates of exactly the given jet order, chart order."""
        return [c for c in self.chart.coords
                if is_field_jet(c) and len(multi_index(c)) == order]

    def volume_form(self) -> Form:
        """omega = d^n x."""
        key = tuple(x(lam) for lam in range(self.n))
        return Form(self.chart, self.n, {key: Poly.const(1)})

    def omega_lambda(self, lam: int) -> Form:
        """omega_lam = d/dx^lam | omega (interior product with the volume)."""
        key = tuple(x(nu) for nu in range(self.n) if nu != lam)
        sign = Poly.const(1 if lam % 2 == 0 else -1)
        return Form(self.chart, self.n - 1, {key: sign})


def total_derivative(f: Poly, lam: int, ctx: JetContext) -> Poly:
    """d_lam f: base partial plus jet-raising terms plus function symbols."""
    N = ctx.jet_order
    out = f.partial(x(lam))
    for v in f.indets():
        if is_field_jet(v):
            if len(multi_index(v)) >= N:
                raise JetOrderExceeded(
                    f"d_{lam} of expression containing top-order {indet_str(v)}")
            out = out + Poly.var(with_extra_deriv(v, lam)) * f.partial(v)
    out = out + f.derive_symbols(lam, COORDINATE_KINDS)
    return out


def _fiber_replacement(c: tuple, ctx: JetContext) -> Form:
    """h0 image of dc: c_{D+lam} dx^lam summed over lam."""
    if len(multi_index(c)) >= ctx.jet_order:
        raise JetOrderExceeded(f"h0 needs a jet above {indet_str(c)}")
    out = Form.zero(ctx.chart, 1)
    for lam in range(ctx.n):
        out = out + Form(ctx.chart, 1,
                         {(x(lam),): Poly.var(with_extra_deriv(c, lam))})
    return out


def horizontal_projection(a: Form, ctx: JetContext) -> Form:
    out = Form.zero(ctx.chart, a.degree)
    for dcs, f in a.terms.items():
        acc = Form.from_poly(ctx.chart, f)
        for c in dcs:
            if acc.is_zero():
                break
            k = c[0]
            if k == X:
                acc = wedge(acc, Form.generator(ctx.chart, c))
            elif k in (CONN, MATTER):
                acc = wedge(acc, _fiber_replacement(c, ctx))
            else:
                raise JetvarError(f"h0 undefined on d{indet_str(c)}")
        if not acc.is_zero():
            out = out + acc
    return out


def _require_horizontal(a: Form):
    for dcs in a.terms:
        for c in dcs:
            if c[0] != X:
                raise JetvarError(f"form is not horizontal: d{indet_str(c)}")


def horizontal_differential(a: Form, ctx: JetContext) -> Form:
    """d_H = dx^lam wedge d_lam on horizontal forms."""
    _require_horizontal(a)
    out = Form.zero(ctx.chart, a.degree + 1)
    for dcs, f in a.terms.items():
        for lam in range(ctx.n):
            g = total_derivative(f, lam, ctx)
            if not g:
                continue
            out = out + wedge(Form(ctx.chart, 1, {(x(lam),): g}),
                              Form(ctx.chart, len(dcs), {dcs: Poly.const(1)}))
    return out


def contact_form(c: tuple, ctx: JetContext) -> Form:
    """theta^c = dc - c_{D+lam} dx^lam for a fiber coordinate below top order."""
    if not is_field_jet(c):
        raise JetvarError(f"{indet_str(c)} is not a field coordinate")
    return Form.generator(ctx.chart, c) - _fiber_replacement(c, ctx)


def prolong(u: dict, ctx: JetContext, order: int = 1) -> dict:
    """Jet prolongation of a vertical field given on order-0 field coordinates.

    Adds the components d_D u^i on every jet coordinate with 1 <= |D| <= order.
    """
    if order > ctx.jet_order:
        raise JetOrderExceeded(f"prolongation order {order} > chart order")
    for c in u:
        if not is_field_jet(c) or multi_index(c):
            raise JetvarError(f"field is not vertical order-0: {indet_str(c)}")
    out = {c: p for c, p in u.items() if p}
    for c, p in list(u.items()):
        level = {(): p}
        for size in range(1, order + 1):
            nxt = {}
            for D, comp in level.items():
                start = D[-1] if D else 0
                for lam in range(start, ctx.n):
                    nxt[D + (lam,)] = total_derivative(comp, lam, ctx)
            level = nxt
            for D, comp in level.items():
                if comp:
                    out[with_extra_deriv_multi(c, D)] = comp
    return out


def with_extra_deriv_multi(c: tuple, D: tuple) -> tuple:
    v = c
    for lam in D:
        v = with_extra_deriv(v, lam)
    return v
