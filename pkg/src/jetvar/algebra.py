"""Lie-algebra data, invariant symmetric tensors, gauge generators.

Structure constants and tensor entries are exact rationals; antisymmetry,
Jacobi, and ad-invariance are verified at load time, never assumed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product

from .errors import AntisymmetryViolation, JacobiViolation, JetvarError
from .indets import conn, gauge
from .jets import JetContext
from .polynomial import Poly, Q

__all__ = ["LieAlgebraData", "InvariantTensor", "load_lie_algebra",
           "killing_form", "check_invariant_tensor", "gauge_generator",
           "section_bracket", "builtin_algebra", "builtin_invariant",
           "direct_sum"]


class LieAlgebraData:
    """dim and sparse structure constants c^r_pq (validated)."""

    def __init__(self, dim: int, c: dict):
        self.dim = dim
        self.c = {k: v for k, v in c.items() if v}
        self._validate()

    def bracket_const(self, r: int, p: int, q: int) -> Fraction:
        return self.c.get((r, p, q), Q(0))

    def _validate(self):
        for (r, p, q), v in self.c.items():
            if not all(0 <= i < self.dim for i in (r, p, q)):
                raise JetvarError(f"structure constant index out of range: {(r, p, q)}")
            if v != -self.bracket_const(r, q, p):
                raise AntisymmetryViolation(
                    f"c^{r}_{{{p}{q}}} != -c^{r}_{{{q}{p}}}")
        m = self.dim
        for p, q, s in combinations_with_replacement(range(m), 3):
            for r in range(m):
                acc = Q(0)
                for u in range(m):
                    acc += self.bracket_const(u, p, q) * self.bracket_const(r, u, s)
                    acc += self.bracket_const(u, q, s) * self.bracket_const(r, u, p)
                    acc += self.bracket_const(u, s, p) * self.bracket_const(r, u, q)
                if acc:
                    raise JacobiViolation(f"Jacobi fails at (p,q,s,r)=({p},{q},{s},{r})")


class InvariantTensor:
    """Fully symmetric degree-k tensor, stored on sorted index tuples."""

    def __init__(self, degree: int, entries: dict):
        self.degree = degree
        self.entries = {}
        for idx, v in entries.items():
            if len(idx) != degree:
                raise JetvarError(f"entry {idx} has wrong arity")
            key = tuple(sorted(idx))
            if key in self.entries and self.entries[key] != v:
                raise JetvarError(f"conflicting symmetric entries at {key}")
            if v:
                self.entries[key] = v

    def value(self, idx: tuple) -> Fraction:
        return self.entries.get(tuple(sorted(idx)), Q(0))

    def scaled(self, c) -> "InvariantTensor":
        return InvariantTensor(self.degree,
                               {k: v * c for k, v in self.entries.items()})


def load_lie_algebra(dim: int, constants) -> LieAlgebraData:
    """constants: iterable of (r, p, q, value); omitted entries are zero.
    Entries are mirrored antisymmetrically when only one orientation is given."""
    c: dict = {}
    for r, p, q, v in constants:
        v = Q(v)
        c[(r, p, q)] = v
        mirror = (r, q, p)
        if mirror in c:
            if c[mirror] != -v:
                raise AntisymmetryViolation(f"c^{r}_{{{p}{q}}} and c^{r}_{{{q}{p}}} clash")
        else:
            c[mirror] = -v
    return LieAlgebraData(dim, c)


def killing_form(g: LieAlgebraData):
    """kappa_mn = c^p_mq c^q_np as a dense list of Fraction rows."""
    m = g.dim
    out = [[Q(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            s = Q(0)
            for p in range(m):
                for q in range(m):
                    s += g.bracket_const(p, i, q) * g.bracket_const(q, j, p)
            out[i][j] = s
    return out


def check_invariant_tensor(g: LieAlgebraData, b: InvariantTensor):
    """Ad-invariance residual, fully symmetrized over the free slots.

    Returns a dict of nonzero residual entries keyed by (p, sorted free
    indices); empty means the tensor is invariant.
    """
    m = g.dim
    k = b.degree
    residual: dict = {}
    for p in range(m):
        for tail in product(range(m), repeat=k):
            # tail[0] plays the bracketed slot, tail[1:] fill the rest.
            s = Q(0)
            for r1 in range(m):
                cval = g.bracket_const(r1, p, tail[0])
                if cval:
                    s += cval * b.value((r1,) + tail[1:])
            if s:
                key = (p, tuple(sorted(tail)))
                residual[key] = residual.get(key, Q(0)) + s
    return {k2: v for k2, v in residual.items() if v}


def gauge_generator(g: LieAlgebraData, ctx: JetContext,
                    params: list | None = None) -> dict:
    """Vertical field xi_C on C: component d_mu xi^r + c^r_pq a^p_mu xi^q.

    params, when given, are explicit per-index gauge parameters (Poly in x);
    by default the symbolic xi family is used.  Derivatives of explicit
    parameters are taken with total derivatives (they depend on x only).
    """
    from .jets import total_derivative
    if g.dim != ctx.gauge_dim:
        raise JetvarError("algebra dimension does not match the jet context")
    out = {}
    for r in range(g.dim):
        for mu in range(ctx.n):
            if params is None:
                comp = Poly.var(gauge(r, (mu,)))
            else:
                comp = total_derivative(params[r], mu, ctx)
            for p in range(g.dim):
                for q in range(g.dim):
                    cval = g.bracket_const(r, p, q)
                    if cval:
                        xi_q = Poly.var(gauge(q)) if params is None else params[q]
                        comp = comp + cval * Poly.var(conn(p, mu)) * xi_q
            if comp:
                out[conn(r, mu)] = comp
    return out


def section_bracket(xi: list, eta: list, g: LieAlgebraData) -> list:
    """[xi, eta]^r = c^r_pq xi^p eta^q, componentwise on V_GP sections."""
    out = []
    for r in range(g.dim):
        s = Poly.zero()
        for p in range(g.dim):
            for q in range(g.dim):
                cval = g.bracket_const(r, p, q)
                if cval:
                    s = s + cval * xi[p] * eta[q]
        out.append(s)
    return out


# -- shipped algebras and tensors -------------------------------------

_EPS3 = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
         (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def direct_sum(a: LieAlgebraData, b: LieAlgebraData) -> LieAlgebraData:
    c = dict(a.c)
    off = a.dim
    for (r, p, q), v in b.c.items():
        c[(r + off, p + off, q + off)] = v
    return LieAlgebraData(a.dim + b.dim, c)


def builtin_algebra(name: str) -> LieAlgebraData:
    name = name.strip().lower()
    if "+" in name:
        parts = [builtin_algebra(p) for p in name.split("+")]
        out = parts[0]
        for p in parts[1:]:
            out = direct_sum(out, p)
        return out
    if name == "u1":
        return LieAlgebraData(1, {})
    if name.startswith("u1^"):
        return LieAlgebraData(int(name[3:]), {})
    if name in ("su2", "so3"):
        return LieAlgebraData(3, {k: Q(v) for k, v in _EPS3.items()})
    raise JetvarError(f"unknown algebra {name!r}")


def builtin_invariant(name: str, g: LieAlgebraData, k: int) -> InvariantTensor:
    """Named invariant tensors: 'killing' (k=2), 'unit' (abelian, all-zero
    index slot), 'u1su2-cubic' (degree 3 on u1+su2)."""
    name = name.strip().lower()
    if name == "killing":
        if k != 2:
            raise JetvarError("killing tensor has degree 2")
        kappa = killing_form(g)
        entries = {(i, j): kappa[i][j] for i in range(g.dim) for j in range(i, g.dim)
                   if kappa[i][j]}
        return InvariantTensor(2, entries)
    if name == "unit":
        return InvariantTensor(k, {(0,) * k: Q(1)})
    if name == "u1su2-cubic":
        if k != 3 or g.dim != 4:
            raise JetvarError("u1su2-cubic needs degree 3 on the 4-dim u1+su2")
        kappa = killing_form(g)
        entries: dict = {(0, 0, 0): Q(1)}
        for i in range(g.dim):
            for j in range(i, g.dim):
                if kappa[i][j]:
                    key = tuple(sorted((0, i, j)))
                    entries[key] = entries.get(key, Q(0)) + kappa[i][j]
        return InvariantTensor(3, entries)
    raise JetvarError(f"unknown invariant tensor {name!r}")
