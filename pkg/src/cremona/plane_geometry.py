"""Exact projective plane over a finite field context.

Points are normalized homogeneous coordinate triples (first nonzero
coordinate equal to 1), curves are degree-d forms with coefficients
listed in a fixed monomial order (lexicographic on exponent triples,
descending), and plane transformations are normalized 3x3 matrices over
the prime subfield, i.e. representatives of PGL_3(F_q).

The incidence predicates that define general position for a degree-8
point are provided here: collinearity of a triple, existence of a conic
through six points (degenerate conics count), and existence of a cubic
singular at one point of an 8-tuple and passing through the rest.  All
three are pure kernel/determinant conditions, hence PGL-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field_tower import FieldCtx, FieldElement, rank

__all__ = [
    "DuplicatePoint",
    "PlaneCurve",
    "PointNotOnCurve",
    "ProjPoint",
    "ProjTransform",
    "apply",
    "apply_curve",
    "collinear",
    "monomials",
    "node_check",
    "singular_cubic_through",
    "six_on_conic",
]


class DuplicatePoint(ValueError):
    """Two input points coincide where distinct points are required."""


class PointNotOnCurve(ValueError):
    """The curve does not pass through the given point."""


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples of degree d, lex-descending on (ex, ey, ez)."""
    out = [
        (i, j, d - i - j)
        for i in range(d, -1, -1)
        for j in range(d - i, -1, -1)
    ]
    return tuple(out)


@lru_cache(maxsize=None)
def _mono_index(d: int) -> dict[tuple[int, int, int], int]:
    return {m: i for i, m in enumerate(monomials(d))}


def normalize_coords(coords, ctx: FieldCtx) -> tuple[int, int, int]:
    """Scale so the first nonzero coordinate equals 1."""
    coords = tuple(int(c) for c in coords)
    for c in coords:
        if c:
            if c == 1:
                return coords
            inv = ctx.inv(c)
            return tuple(ctx.mul(inv, x) for x in coords)
    raise ValueError("all coordinates are zero")


class ProjPoint:
    """A point of P^2 over a field context, stored in normalized form."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords):
        vals = []
        for c in coords:
            vals.append(c.e if isinstance(c, FieldElement) else int(c))
        if len(vals) != 3:
            raise ValueError("a projective point needs 3 coordinates")
        self.ctx = ctx
        self.coords = normalize_coords(vals, ctx)

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.ctx == other.ctx
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return "[{}:{}:{}]".format(*self.coords)

    def frobenius(self) -> "ProjPoint":
        f = self.ctx.frobenius
        return ProjPoint(self.ctx, tuple(f(c) for c in self.coords))

    def to_json(self):
        return list(self.coords)


def _eval_monomial(ctx, coords, expo) -> int:
    mul, powf = ctx.mul, ctx.pow
    v = 1
    for c, e in zip(coords, expo):
        if e:
            if c == 0:
                return 0
            v = mul(v, powf(c, e))
    return v


class PlaneCurve:
    """A plane curve of degree d: a nonzero coefficient vector over
    monomials(d), normalized so the first nonzero coefficient is 1."""

    __slots__ = ("ctx", "degree", "coeffs")

    def __init__(self, ctx: FieldCtx, degree: int, coeffs):
        vals = [c.e if isinstance(c, FieldElement) else int(c) for c in coeffs]
        if degree < 1:
            raise ValueError("degree must be >= 1")
        if len(vals) != len(monomials(degree)):
            raise ValueError("coefficient vector has the wrong length")
        self.ctx = ctx
        self.degree = degree
        self.coeffs = self._normalize(vals, ctx)

    @staticmethod
    def _normalize(vals, ctx):
        for c in vals:
            if c:
                if c == 1:
                    return tuple(vals)
                inv = ctx.inv(c)
                return tuple(ctx.mul(inv, x) for x in vals)
        raise ValueError("curve is identically zero")

    @classmethod
    def from_dict(cls, ctx, degree, coeff_map):
        """Curve from {exponent triple: coefficient}; negative ints are
        taken in the prime subfield (e.g. -1 means p - 1)."""
        idx = _mono_index(degree)
        vals = [0] * len(idx)
        for expo, c in coeff_map.items():
            if isinstance(c, FieldElement):
                vals[idx[expo]] = c.e
            elif c < 0:
                vals[idx[expo]] = c % ctx.p
            else:
                vals[idx[expo]] = int(c)
        return cls(ctx, degree, vals)

    def evaluate(self, point: ProjPoint) -> int:
        return evaluate_form(self.coeffs, self.degree, point.coords, self.ctx)

    def partials(self):
        """Coefficient vectors of the three partial derivatives.

        Returned as raw vectors over monomials(degree-1); a partial may
        be identically zero in small characteristic.
        """
        return [
            partial_form(self.coeffs, self.degree, v, self.ctx) for v in range(3)
        ]

    def __eq__(self, other):
        return (
            isinstance(other, PlaneCurve)
            and self.ctx == other.ctx
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"PlaneCurve(deg={self.degree}, coeffs={self.coeffs})"

    def to_json(self):
        return {"degree": self.degree, "coeffs": list(self.coeffs)}


def evaluate_form(coeffs, degree, coords, ctx) -> int:
    add, mul = ctx.add, ctx.mul
    acc = 0
    for c, expo in zip(coeffs, monomials(degree)):
        if c:
            acc = add(acc, mul(c, _eval_monomial(ctx, coords, expo)))
    return acc


def partial_form(coeffs, degree, var, ctx):
    """d/dx_var of a degree-`degree` form, as a vector over monomials(degree-1)."""
    p = ctx.p
    idx = _mono_index(degree - 1)
    out = [0] * len(idx)
    for c, expo in zip(coeffs, monomials(degree)):
        e = expo[var]
        if c and e % p:
            lower = list(expo)
            lower[var] -= 1
            j = idx[tuple(lower)]
            out[j] = ctx.add(out[j], ctx.mul(e % p, c))
    return out


def _poly_mul_linear(coeffs, degree, linear, ctx):
    """Multiply a degree-`degree` form by a linear form (3 coefficients)."""
    add, mul = ctx.add, ctx.mul
    idx = _mono_index(degree + 1)
    out = [0] * len(idx)
    for c, expo in zip(coeffs, monomials(degree)):
        if not c:
            continue
        for v in range(3):
            lv = linear[v]
            if lv:
                up = list(expo)
                up[v] += 1
                j = idx[tuple(up)]
                out[j] = add(out[j], mul(c, lv))
    return out


def substitute_form(coeffs, degree, matrix, ctx):
    """Coefficients of F(M.v): substitute the linear forms given by the
    rows of `matrix` (entries are encodings) into the form F."""
    add = ctx.add
    rows = [tuple(int(x) for x in r) for r in matrix]
    out = [0] * len(monomials(degree))
    for c, expo in zip(coeffs, monomials(degree)):
        if not c:
            continue
        term = [c]  # degree-0 form
        tdeg = 0
        for v in range(3):
            for _ in range(expo[v]):
                term = _poly_mul_linear(term, tdeg, rows[v], ctx)
                tdeg += 1
        out = [add(a, b) for a, b in zip(out, term)]
    return out


# ----------------------------------------------------------------------
# transformations

def _det3_mod(m, p):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    ) % p


def _adjugate_mod(m, p):
    c = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            a = m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
            b = m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3]
            c[i][j] = (a - b) % p
    return c


class ProjTransform:
    """An element of PGL_3(F_p): invertible 3x3 matrix over the prime
    field, normalized so the first nonzero entry (row-major) is 1."""

    __slots__ = ("p", "matrix")

    def __init__(self, p: int, matrix):
        rows = [tuple(int(x) % p for x in r) for r in matrix]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("need a 3x3 matrix")
        if _det3_mod(rows, p) == 0:
            raise ValueError("matrix is singular")
        flat = [x for r in rows for x in r]
        lead = next(x for x in flat if x)
        if lead != 1:
            inv = pow(lead, -1, p)
            rows = [tuple((inv * x) % p for x in r) for r in rows]
        self.p = p
        self.matrix = tuple(rows)

    @classmethod
    def identity(cls, p: int) -> "ProjTransform":
        return cls(p, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def inverse(self) -> "ProjTransform":
        return ProjTransform(self.p, _adjugate_mod(self.matrix, self.p))

    def compose(self, other: "ProjTransform") -> "ProjTransform":
        """self after other (matrix product self . other)."""
        a, b, p = self.matrix, other.matrix, self.p
        prod = [
            [sum(a[i][k] * b[k][j] for k in range(3)) % p for j in range(3)]
            for i in range(3)
        ]
        return ProjTransform(p, prod)

    def __mul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        return (
            isinstance(other, ProjTransform)
            and self.p == other.p
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.p, self.matrix))

    def __repr__(self):
        return f"ProjTransform({self.matrix})"

    def to_json(self):
        return [x for r in self.matrix for x in r]


def apply_raw(matrix, coords, ctx):
    """matrix . coords over ctx, then normalized."""
    add, mul = ctx.add, ctx.mul
    out = []
    for row in matrix:
        acc = 0
        for m, c in zip(row, coords):
            if m and c:
                acc = add(acc, mul(m, c))
        out.append(acc)
    return normalize_coords(out, ctx)


def apply(g: ProjTransform, point: ProjPoint) -> ProjPoint:
    """Image of a point; entries of g lie in the prime subfield."""
    return ProjPoint(point.ctx, apply_raw(g.matrix, point.coords, point.ctx))


def apply_curve(g: ProjTransform, curve: PlaneCurve) -> PlaneCurve:
    """Image curve: p lies on C iff apply(g, p) lies on apply_curve(g, C)."""
    minv = g.inverse().matrix
    coeffs = substitute_form(curve.coeffs, curve.degree, minv, curve.ctx)
    return PlaneCurve(curve.ctx, curve.degree, coeffs)


# ----------------------------------------------------------------------
# incidence predicates

def _coords_of(p):
    return p.coords if isinstance(p, ProjPoint) else tuple(int(c) for c in p)


def collinear_raw(c1, c2, c3, ctx) -> bool:
    mul, sub = ctx.mul, ctx.sub
    x1, y1, z1 = c1
    x2, y2, z2 = c2
    x3, y3, z3 = c3
    d = sub(
        mul(x1, sub(mul(y2, z3), mul(y3, z2))),
        sub(
            mul(y1, sub(mul(x2, z3), mul(x3, z2))),
            mul(z1, sub(mul(x2, y3), mul(x3, y2))),
        ),
    )
    return d == 0


def collinear(p1, p2, p3, ctx=None) -> bool:
    """True iff the 3x3 coordinate determinant vanishes."""
    if ctx is None:
        ctx = p1.ctx
    return collinear_raw(_coords_of(p1), _coords_of(p2), _coords_of(p3), ctx)


def veronese_row(coords, degree, ctx):
    return [_eval_monomial(ctx, coords, e) for e in monomials(degree)]


def six_on_conic(points, ctx=None) -> bool:
    """True iff some nonzero conic (degenerate allowed) contains all six."""
    pts = [_coords_of(p) for p in points]
    if ctx is None:
        ctx = points[0].ctx
    if len(pts) != 6:
        raise ValueError("exactly six points required")
    if len(set(pts)) != 6:
        raise DuplicatePoint("six_on_conic needs pairwise distinct points")
    rows = [veronese_row(c, 2, ctx) for c in pts]
    return rank(rows, ctx) < 6


def singular_cubic_through(points, i: int, ctx=None) -> bool:
    """True iff a nonzero cubic passes through all 8 points and is singular
    at points[i].

    Singularity is imposed as 4 linear conditions: the value (already among
    the 8 vanishing conditions) and all three first partials.  The value
    condition is kept explicitly because Euler's relation degenerates when
    the characteristic divides 3.
    """
    pts = [_coords_of(p) for p in points]
    if ctx is None:
        ctx = points[0].ctx
    if len(pts) != 8:
        raise ValueError("exactly eight points required")
    if len(set(pts)) != 8:
        raise DuplicatePoint("singular_cubic_through needs distinct points")
    if not 0 <= i < 8:
        raise ValueError("index out of range")
    rows = [veronese_row(c, 3, ctx) for c in pts]
    target = pts[i]
    p = ctx.p
    for var in range(3):
        row = []
        for expo in monomials(3):
            e = expo[var] % p
            if e == 0:
                row.append(0)
                continue
            lower = list(expo)
            lower[var] -= 1
            row.append(ctx.mul(e, _eval_monomial(ctx, target, lower)))
        rows.append(row)
    return rank(rows, ctx) < 10


def node_check(curve: PlaneCurve, point: ProjPoint) -> bool:
    """True iff the curve has an ordinary node at the point: all three
    partials vanish there and the degree-2 tangent cone is squarefree
    (two distinct tangent directions over the closure).

    In characteristic 2 the formal-derivative criterion is blind, so a
    binary quadratic a.u^2 + b.uv + c.v^2 is squarefree iff b != 0.
    """
    ctx = curve.ctx
    if curve.evaluate(point) != 0:
        raise PointNotOnCurve(f"{point} is not on the curve")
    coords = point.coords
    for part in curve.partials():
        if evaluate_form(part, curve.degree - 1, coords, ctx):
            return False
    # move the point to [0:0:1] and read off the tangent cone
    lead = coords.index(1)
    cols = [[0, 0, 0], [0, 0, 0], list(coords)]
    cols[0][(lead + 1) % 3] = 1
    cols[1][(lead + 2) % 3] = 1
    mat = [[cols[j][i] for j in range(3)] for i in range(3)]
    new = substitute_form(curve.coeffs, curve.degree, mat, ctx)
    idx = _mono_index(curve.degree)
    d = curve.degree
    a = new[idx[(2, 0, d - 2)]]
    b = new[idx[(1, 1, d - 2)]]
    c = new[idx[(0, 2, d - 2)]]
    if a == 0 and b == 0 and c == 0:
        return False  # worse than a double point
    if ctx.p == 2:
        return b != 0
    disc = ctx.sub(ctx.mul(b, b), ctx.mul(4 % ctx.p, ctx.mul(a, c)))
    return disc != 0
