"""The nodal cubic normal form xyz = c0.x^3 - c0.z^3 and its uses.

The curve has a node at [0:1:0] with tangent cone xz, and its smooth
locus is parametrized by a -> [a : c0(a^3 - 1)/a : 1] for a != 0.  The
parametrization is multiplicative: three points are collinear iff the
product of their parameters is 1, and six points lie on a common conic
iff the product of the six parameters is 1.  These equivalences, the
reduction of a posed nodal cubic to the normal form, and the count of
nodal members in the pencil of cubics through a degree-8 orbit all live
here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .field_tower import FieldCtx, FieldElement, get_ctx, nullspace
from .plane_geometry import (
    PlaneCurve,
    ProjPoint,
    ProjTransform,
    _eval_monomial,
    evaluate_form,
    monomials,
    node_check,
    partial_form,
    substitute_form,
)

__all__ = [
    "BadPose",
    "NodalCubicNF",
    "NotAPencil",
    "ProductNotOne",
    "Reducible",
    "ZeroArgument",
    "count_nodal_members",
    "cubic_pencil_basis",
    "is_cube",
    "line_witness",
    "normalize",
    "param_point",
]


class ZeroArgument(ValueError):
    """A nonzero field element was required."""


class ProductNotOne(ValueError):
    """The parameters do not multiply to 1."""


class BadPose(ValueError):
    """The cubic is not posed with node [0:1:0] and tangent cone xz."""


class Reducible(ValueError):
    """The cubic is reducible (a coefficient that must be nonzero vanishes)."""


class NotAPencil(ValueError):
    """The cubics through the orbit do not form a pencil."""


# support of a posed nodal cubic xyz = c0 x^3 + c1 x^2 z + c2 x z^2 + c3 z^3
_POSE_MONOS = {(1, 1, 1), (3, 0, 0), (2, 0, 1), (1, 0, 2), (0, 0, 3)}


@dataclass(frozen=True)
class NodalCubicNF:
    """Normal form xyz = c0 x^3 - c0 z^3 over F_q, c0 in F_q*."""

    q: int
    c0: int

    def __post_init__(self):
        if not 0 < self.c0 < self.q:
            raise ZeroArgument("c0 must be a nonzero prime-field element")
        ctx = get_ctx(self.q, 1)
        curve = self.curve(ctx)
        if not node_check(curve, ProjPoint(ctx, (0, 1, 0))):
            raise AssertionError("normal form lost its node")  # unreachable

    def curve(self, ctx: FieldCtx) -> PlaneCurve:
        """The defining cubic xyz - c0 x^3 + c0 z^3 over any context of
        the same characteristic."""
        if ctx.p != self.q:
            raise ValueError("context has the wrong characteristic")
        neg = ctx.neg(self.c0)
        return PlaneCurve.from_dict(
            ctx, 3, {(1, 1, 1): 1, (3, 0, 0): neg, (0, 0, 3): self.c0}
        )

    def to_json(self):
        return {"q": self.q, "c0": self.c0}


def param_point(nf: NodalCubicNF, a: FieldElement) -> ProjPoint:
    """[a : c0(a^3 - 1)/a : 1], a point of the normal-form curve."""
    ctx = a.ctx
    if ctx.p != nf.q:
        raise ValueError("parameter from the wrong characteristic")
    if a.e == 0:
        raise ZeroArgument("parameter must be nonzero")
    a3 = ctx.pow(a.e, 3)
    y = ctx.div(ctx.mul(nf.c0, ctx.sub(a3, 1)), a.e)
    return ProjPoint(ctx, (a.e, y, 1))


def line_witness(nf: NodalCubicNF, a1, a2, a3) -> PlaneCurve:
    """The line y + Ax + B = 0 through the three parametrized points.

    A and B are read off the factorization
        P(x,1) + Ax^2 + Bx = c0 (x - a1)(x - a2)(x - a3),
    so A = -c0(a1 + a2 + a3) and B = c0(a1 a2 + a1 a3 + a2 a3); the
    factorization forces a1 a2 a3 = 1.
    """
    ctx = a1.ctx
    vals = [a1.e, a2.e, a3.e]
    if 0 in vals:
        raise ZeroArgument("parameters must be nonzero")
    if len(set(vals)) != 3:
        raise ValueError("parameters must be pairwise distinct")
    prod = ctx.mul(ctx.mul(vals[0], vals[1]), vals[2])
    if prod != 1:
        raise ProductNotOne(f"a1 a2 a3 = {prod} != 1")
    e1 = ctx.add(ctx.add(vals[0], vals[1]), vals[2])
    e2 = ctx.add(
        ctx.add(ctx.mul(vals[0], vals[1]), ctx.mul(vals[0], vals[2])),
        ctx.mul(vals[1], vals[2]),
    )
    A = ctx.neg(ctx.mul(nf.c0, e1))
    B = ctx.mul(nf.c0, e2)
    return PlaneCurve.from_dict(ctx, 1, {(1, 0, 0): A, (0, 1, 0): 1, (0, 0, 1): B})


def is_cube(x: FieldElement) -> bool:
    """Whether x is a cube in F_q*: always when 3 does not divide q - 1,
    else iff x^((q-1)/3) = 1."""
    ctx = x.ctx
    if x.e == 0:
        raise ZeroArgument("cube test needs a nonzero element")
    units = ctx.size - 1
    if units % 3:
        return True
    return ctx.pow(x.e, units // 3) == 1


def normalize(curve: PlaneCurve):
    """Reduce a posed nodal cubic to the normal form.

    The input must have its node at [0:1:0] with tangent cone xz, i.e.
    an equation xyz = c0 x^3 + c1 x^2 z + c2 x z^2 + c3 z^3.  Returns
    (g, nf) with g in PGL_3(F_q) such that the equation of the input
    composed with g is the normal form (g = shear then diagonal scale),
    or None when -c0/c3 is not a cube in F_q.
    """
    ctx = curve.ctx
    if curve.degree != 3:
        raise ValueError("normalize expects a cubic")
    idx = {m: i for i, m in enumerate(monomials(3))}
    for m, c in zip(monomials(3), curve.coeffs):
        if c and m not in _POSE_MONOS:
            raise BadPose(f"unexpected monomial {m}")
    xyz = curve.coeffs[idx[(1, 1, 1)]]
    if xyz == 0:
        raise BadPose("no xyz term: tangent cone is not xz")
    # scale so the equation reads xyz - c0 x^3 - c1 x^2 z - c2 x z^2 - c3 z^3
    inv = ctx.inv(xyz)
    c0 = ctx.neg(ctx.mul(inv, curve.coeffs[idx[(3, 0, 0)]]))
    c1 = ctx.neg(ctx.mul(inv, curve.coeffs[idx[(2, 0, 1)]]))
    c2 = ctx.neg(ctx.mul(inv, curve.coeffs[idx[(1, 0, 2)]]))
    c3 = ctx.neg(ctx.mul(inv, curve.coeffs[idx[(0, 0, 3)]]))
    if c0 == 0 or c3 == 0:
        raise Reducible("c0 c3 = 0 makes the cubic reducible")
    ratio = ctx.div(ctx.neg(c0), c3)
    if not is_cube(FieldElement(ctx, ratio)):
        return None
    a = next(v for v in range(1, ctx.size) if ctx.pow(v, 3) == ratio)
    # shear (x, y, z) -> (x, y + c1 x + c2 z, z), then (x, y, z) -> (x, y/a, az)
    shear = ProjTransform(ctx.p, [[1, 0, 0], [c1, 1, c2], [0, 0, 1]])
    ainv = ctx.inv(a)
    scale = ProjTransform(ctx.p, [[1, 0, 0], [0, ainv, 0], [0, 0, a]])
    g = shear.compose(scale)
    nf = NodalCubicNF(ctx.p, c0)
    new = substitute_form(curve.coeffs, 3, g.matrix, ctx)
    if PlaneCurve(ctx, 3, new) != nf.curve(ctx):
        raise AssertionError("normalization did not reach the normal form")
    return g, nf


# ----------------------------------------------------------------------
# pencils of cubics through a degree-8 orbit and their nodal members

def cubic_pencil_basis(orbit_points, ctx: FieldCtx):
    """Basis over F_q of the cubics through a Frobenius-closed 8-point set.

    The conditions from one point of the orbit, expanded over the power
    basis of F_{q^8}/F_q, already cut out the full Galois-stable system,
    giving an 8x10 matrix over the prime field.  Raises NotAPencil unless
    the kernel has dimension exactly 2.
    """
    p = ctx.p
    prime = get_ctx(p, 1)
    seed = orbit_points[0]
    coords = seed.coords if isinstance(seed, ProjPoint) else seed
    rows = [[0] * 10 for _ in range(ctx.n)]
    for j, expo in enumerate(monomials(3)):
        val = _eval_monomial(ctx, coords, expo)
        for i, digit in enumerate(ctx.coeffs(val)):
            rows[i][j] = digit
    basis = nullspace(rows, prime)
    if len(basis) != 2:
        raise NotAPencil(f"kernel dimension {len(basis)} != 2")
    return basis


def _singular_points(coeffs, ctx):
    """All points of P^2(ctx) where the cubic and its partials vanish.

    Works by enumerating the zero set of one nonzero partial (a conic)
    via quadratic solving, then filtering by the remaining equations.
    The value of the cubic is checked explicitly (needed in char 3).
    """
    parts = [partial_form(coeffs, 3, v, ctx) for v in range(3)]
    pivot = next((pt for pt in parts if any(pt)), None)
    if pivot is None:
        return None  # all partials vanish identically: not a nodal cubic
    mono2 = monomials(2)
    idx = {m: i for i, m in enumerate(mono2)}
    q20, q11, q10 = pivot[idx[(2, 0, 0)]], pivot[idx[(1, 1, 0)]], pivot[idx[(1, 0, 1)]]
    q02, q01, q00 = pivot[idx[(0, 2, 0)]], pivot[idx[(0, 1, 1)]], pivot[idx[(0, 0, 2)]]
    add, mul = ctx.add, ctx.mul
    cands = []
    # affine chart z = 1: for each x, solve the quadratic in y
    for x in range(ctx.size):
        x2 = mul(x, x)
        a = q02
        b = add(mul(q11, x), q01)
        c = add(add(mul(q20, x2), mul(q10, x)), q00)
        roots = ctx.quadratic_roots(a, b, c)
        if roots is None:
            cands.extend((x, y, 1) for y in range(ctx.size))
        else:
            cands.extend((x, y, 1) for y in set(roots))
    # line z = 0: [x:1:0] and [1:0:0]
    for x in range(ctx.size):
        if add(add(mul(q20, mul(x, x)), mul(q11, x)), q02) == 0:
            cands.append((x, 1, 0))
    if q20 == 0:
        cands.append((1, 0, 0))
    out = []
    for c3 in cands:
        if evaluate_form(coeffs, 3, c3, ctx):
            continue
        if all(evaluate_form(pt, 2, c3, ctx) == 0 for pt in parts):
            out.append(c3)
    return out


def count_nodal_members(orbit, extension_cap: int = 8) -> int:
    """Number of nodal members of the pencil of cubics through the orbit,
    among members defined over F_{q^m} for m <= extension_cap.

    The orbit must be in general position, so every member is
    geometrically irreducible (a line or conic component would violate
    general position by Bezout) and has at most one singular point,
    necessarily rational over the member's field of definition.  The
    count is a lower bound for the count over the algebraic closure;
    callers assert it stays <= 12.
    """
    points = orbit.points if hasattr(orbit, "points") else orbit
    ctx = orbit.ctx if hasattr(orbit, "ctx") else points[0].ctx
    g1, g2 = cubic_pencil_basis(points, ctx)
    p = ctx.p
    count = 0
    for m in range(1, extension_cap + 1):
        sub = get_ctx(p, m)
        proper = [d for d in range(1, m) if m % d == 0]
        members = itertools.chain(((1, t) for t in range(sub.size)), [(0, 1)])
        for s, t in members:
            if _member_level(sub, s, t, proper):
                continue
            coeffs = [
                sub.add(sub.mul(s, a), sub.mul(t, b)) for a, b in zip(g1, g2)
            ]
            sings = _singular_points(coeffs, sub)
            if sings is None or len(sings) != 1:
                continue
            curve = PlaneCurve(sub, 3, coeffs)
            if node_check(curve, ProjPoint(sub, sings[0])):
                count += 1
    return count


def _member_level(sub, s, t, seen_levels):
    """True if [s:t] is already defined over a proper subfield level."""
    return any(
        sub.in_subfield(s, d) and sub.in_subfield(t, d) for d in seen_levels
    )
