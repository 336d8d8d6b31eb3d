"""Integer Neron-Severi models of blow-ups of the plane.

A `Lattice` is a basis with its intersection form, the canonical class,
the orbit degrees of the exceptional classes, and the generators of the
effective cone for the generic configuration it models.  Ordinary
blow-ups of orbits of degrees (d_1, ..., d_r) use the orthogonal basis
(H, E_1, ..., E_r) with H^2 = 1 and E_i^2 = -d_i; an infinitely-near
pair of rational points uses the strict-transform basis (L', E, E')
with -K = 3L' + 2E + 4E' and H = L' + E + 2E'.

Contractions are tracked as sets of pairwise-orthogonal "wall" classes
in the ambient lattice: the pullbacks of the exceptional orbit classes
contracted along the way.  Iterating over all contraction states yields
the chamber decomposition of the big cone (each chamber is the set of
divisors whose ample model contracts exactly that state), the windows
(rank-1 fibrations) on its non-big boundary, and the raw material for
the square complexes built in `sarkisov_complex`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BadNesting",
    "Chamber",
    "Lattice",
    "NotBig",
    "NotNested",
    "SearchBoundExceeded",
    "blowup_lattice",
    "chambers",
    "codim_of_shared_face",
    "negative_classes",
    "run_ample_model",
    "windows",
]


class BadNesting(ValueError):
    """The infinitely-near relations are not a supported forest."""


class NotBig(ValueError):
    """The divisor class is not big (its ample model is not birational)."""


class NotNested(ValueError):
    """The two chambers' contracted sets are not nested."""


class SearchBoundExceeded(RuntimeError):
    """The negative-class search box was exhausted inconclusively."""


Vec = tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """Neron-Severi model: labels, Gram matrix, canonical class, orbit
    degrees of exceptional classes, effective-cone generators, and an
    internal orthogonal model (H, e_1, ..., e_r) used for searches."""

    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    K: Vec
    degrees: tuple[int, ...]
    eff_gens: tuple[Vec, ...]
    orth_to_public: tuple[tuple[int, ...], ...]  # columns: H, e_1, ..., e_r

    @property
    def rank(self) -> int:
        return len(self.labels)

    def dot(self, u, v) -> int:
        g = self.gram
        n = self.rank
        return sum(u[i] * g[i][j] * v[j] for i in range(n) for j in range(n))

    def selfint(self, v) -> int:
        return self.dot(v, v)

    def k_dot(self, v) -> int:
        return self.dot(self.K, v)

    def k_squared(self) -> int:
        return self.dot(self.K, self.K)

    def basis_vector(self, label: str) -> Vec:
        i = self.labels.index(label)
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def vector(self, coeff_map: dict) -> Vec:
        out = [0] * self.rank
        for label, c in coeff_map.items():
            out[self.labels.index(label)] = c
        return tuple(out)

    def describe(self, v) -> str:
        """Human-readable combination of basis labels, e.g. 'H-E1-E2'."""
        parts = []
        for c, label in zip(v, self.labels):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            parts.append(f"{sign}{'' if mag == 1 else mag}{label}")
        return "".join(parts) or "0"

    def from_orth(self, v) -> Vec:
        t = self.orth_to_public
        n = self.rank
        return tuple(sum(t[i][j] * v[j] for j in range(n)) for i in range(n))

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "gram": [list(r) for r in self.gram],
            "K": list(self.K),
            "degrees": list(self.degrees),
        }


def _identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def blowup_lattice(degrees, nesting=None) -> Lattice:
    """Blow-up of P^2 at orbits of the given degrees.

    Without nesting: basis (H, E1, ..., Er), Gram diag(1, -d_1, ..., -d_r),
    K = -3H + sum E_i.  The only supported nesting is a pair of rational
    points with the second infinitely near the first, which returns the
    strict-transform basis (L', E, E').
    """
    degrees = tuple(int(d) for d in degrees)
    if any(d < 1 for d in degrees):
        raise ValueError("orbit degrees must be >= 1")
    r = len(degrees)
    if nesting is not None and any(p is not None for p in nesting):
        if list(nesting) != [None, 0] or degrees != (1, 1):
            raise BadNesting(
                "only a single infinitely-near pair of rational points is modeled"
            )
        return _nested_pair_lattice()
    labels = ("H",) + tuple(f"E{i+1}" for i in range(r))
    gram = [[0] * (r + 1) for _ in range(r + 1)]
    gram[0][0] = 1
    for i, d in enumerate(degrees):
        gram[i + 1][i + 1] = -d
    K = tuple([-3] + [1] * r)
    lat = Lattice(
        labels=labels,
        gram=tuple(tuple(row) for row in gram),
        K=K,
        degrees=(0,) + degrees,
        eff_gens=(),
        orth_to_public=_identity(r + 1),
    )
    return _with_ordinary_gens(lat, degrees)


def _with_ordinary_gens(lat: Lattice, degrees) -> Lattice:
    r = len(degrees)
    gens = []
    for i in range(r):
        gens.append(tuple(1 if j == i + 1 else 0 for j in range(r + 1)))
    for i, j in itertools.combinations(range(r), 2):
        if degrees[i] == 1 and degrees[j] == 1:
            line = [0] * (r + 1)
            line[0], line[i + 1], line[j + 1] = 1, -1, -1
            gens.append(tuple(line))
    if r == 1:
        partner = _rank2_partner(lat, gens[0])
        if partner is not None:
            gens.append(partner)
    for f in _fiber_candidates_raw(lat):
        gens.append(f)
    return Lattice(
        labels=lat.labels,
        gram=lat.gram,
        K=lat.K,
        degrees=lat.degrees,
        eff_gens=tuple(dict.fromkeys(gens)),
        orth_to_public=lat.orth_to_public,
    )


def _nested_pair_lattice() -> Lattice:
    # basis (L', E, E') with L' = H-e1-e2, E = e1-e2, E' = e2
    gram = ((-1, 0, 1), (0, -2, 1), (1, 1, -1))
    K = (-3, -2, -4)  # -K = 3L' + 2E + 4E'
    # columns of orth_to_public: H = L'+E+2E', e1 = E+E', e2 = E'
    t = ((1, 0, 0), (1, 1, 0), (2, 1, 1))
    gens = ((1, 0, 0), (0, 1, 0), (0, 0, 1))  # L', E, E'
    lat = Lattice(
        labels=("L'", "E", "E'"),
        gram=gram,
        K=K,
        degrees=(0, 1, 1),
        eff_gens=gens,
        orth_to_public=t,
    )
    fibers = tuple(_fiber_candidates_raw(lat))
    return Lattice(
        labels=lat.labels,
        gram=lat.gram,
        K=lat.K,
        degrees=lat.degrees,
        eff_gens=tuple(dict.fromkeys(gens + fibers)),
        orth_to_public=t,
    )


def _rank2_partner(lat: Lattice, ray: Vec):
    """Second extremal contraction of a rank-2 del Pezzo lattice: the
    image of `ray` under the involution fixing K, when integral."""
    ksq = lat.k_squared()
    if ksq < 1:
        return None
    kr = lat.k_dot(ray)
    if (2 * kr) % ksq:
        return None
    c = 2 * kr // ksq
    partner = tuple(c * k - v for k, v in zip(lat.K, ray))
    if partner == ray:
        return None
    d = -lat.selfint(partner)
    if d < 1 or lat.k_dot(partner) != -d:
        return None
    return partner


# ----------------------------------------------------------------------
# candidate wall and fiber classes (searches run in the orthogonal model)

def _orth_degrees(lat: Lattice):
    """(1, -d_1, ..., -d_r) diagonal of the orthogonal model."""
    n = lat.rank
    t = lat.orth_to_public
    out = []
    for j in range(n):
        col = tuple(t[i][j] for i in range(n))
        out.append(lat.dot(col, col))
    return out


def _search_bound(lat: Lattice) -> int:
    # H-degree cap for orbit (-1)-classes on blow-ups of <= 8 points: the
    # classical list tops out at sextics (degree 6); rank-2 partner rays
    # beyond the box are injected separately.
    total = sum(d for d in lat.degrees if d)
    return min(3 * (9 - total + 3), 6)


def _negative_candidates(lat: Lattice):
    """Solutions of C^2 = K.C = -d (d >= 1) in the coefficient box:
    a(a+3) = sum d_i c_i (c_i - 1) over the orthogonal model."""
    diag = _orth_degrees(lat)
    if diag[0] != 1 or any(d >= 0 for d in diag[1:]):
        raise AssertionError("orthogonal model is not diag(1, -d_i)")
    ds = [-d for d in diag[1:]]
    amax = max(_search_bound(lat), 0)
    out = []
    for a in range(amax + 1):
        target = a * (a + 3)
        for cs in _weighted_pell(ds, target):
            vec = lat.from_orth((a,) + cs)
            d = -lat.selfint(vec)
            if d >= 1 and lat.k_dot(vec) == -d:
                out.append(vec)
    if lat.rank == 2:
        for gen in list(out):
            partner = _rank2_partner(lat, gen)
            if partner is not None and partner not in out:
                out.append(partner)
    return list(dict.fromkeys(out))


def _weighted_pell(ds, target):
    """All integer tuples (c_1, ..., c_r) with sum d_i c_i (c_i-1) = target."""
    if not ds:
        if target == 0:
            yield ()
        return
    d = ds[0]
    c = 0
    opts = []
    while True:
        v = d * c * (c - 1)
        if v > target:
            break
        opts.append((c, v))
        if c != 1 - c:
            opts.append((1 - c, v))
        c += 1
    for c0, v in opts:
        for rest in _weighted_pell(ds[1:], target - v):
            yield (c0,) + rest


def _fiber_candidates_raw(lat: Lattice):
    """Solutions of f^2 = 0, K.f = -2 that are nef on the ambient model
    (nonnegative against every effective generator) and effective."""
    diag = _orth_degrees(lat)
    ds = [-d for d in diag[1:]]
    amax = max(_search_bound(lat), 1)
    out = []
    for a in range(1, amax + 1):
        # a^2 = sum d_i c_i^2 and 3a + sum d_i c_i = 2
        for cs in _weighted_sumsq(ds, a * a):
            vec = lat.from_orth((a,) + cs)
            if lat.selfint(vec) == 0 and lat.k_dot(vec) == -2:
                out.append(vec)
    # Riemann-Roch makes every f with f^2 = 0, K.f = -2 effective, so
    # only the nef condition filters out fake fibers.
    return [
        f
        for f in dict.fromkeys(out)
        if all(lat.dot(f, g) >= 0 for g in lat.eff_gens)
    ]


def _weighted_sumsq(ds, target):
    if not ds:
        if target == 0:
            yield ()
        return
    d = ds[0]
    c = 0
    opts = []
    while d * c * c <= target:
        opts.append((c, d * c * c))
        if c:
            opts.append((-c, d * c * c))
        c += 1
    for c0, v in opts:
        for rest in _weighted_sumsq(ds[1:], target - v):
            yield (c0,) + rest


def _expressible(v, gens, lat: Lattice, min_parts=1):
    """Whether v is a sum of at least `min_parts` generators (repeats
    allowed); with min_parts=2 this is the decomposability test.

    Pruned by an ample functional, strictly positive on every effective
    generator, which bounds the number of parts and forces termination.
    """
    gens = tuple(gens)
    if not gens:
        return False
    ample = _ample_base(lat)
    gen_data = [(g, lat.dot(ample, g)) for g in gens]
    if any(ga <= 0 for _, ga in gen_data):
        raise AssertionError("ample base is not positive on a generator")
    memo: dict = {}

    def rec(rem, rem_a, start, parts):
        if all(c == 0 for c in rem):
            return parts >= min_parts
        key = (rem, start, min(parts, min_parts))
        if key in memo:
            return memo[key]
        hit = False
        for i in range(start, len(gen_data)):
            g, ga = gen_data[i]
            if rem_a - ga < 0:
                continue
            nxt = tuple(a - b for a, b in zip(rem, g))
            if rec(nxt, rem_a - ga, i, parts + 1):
                hit = True
                break
        memo[key] = hit
        return hit

    return rec(tuple(v), lat.dot(ample, v), 0, 0)


# ----------------------------------------------------------------------
# contraction states

@dataclass(frozen=True)
class Chamber:
    """A chamber of the big-cone decomposition: the set of divisors whose
    ample model contracts exactly `contracted` (wall classes, pairwise
    orthogonal, iteratively contractible); `certificate` is an integral
    class interior to the chamber."""

    lattice: Lattice
    contracted: tuple[Vec, ...]
    certificate: Vec

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.lattice.describe(v) for v in self.contracted)

    def target_rank(self) -> int:
        return self.lattice.rank - len(self.contracted)

    def target_k_squared(self) -> int:
        drop = sum(-self.lattice.selfint(s) for s in self.contracted)
        return self.lattice.k_squared() + drop

    def to_json(self) -> dict:
        return {
            "contracted": list(self.labels),
            "certificate": [str(Fraction(c)) for c in self.certificate],
        }


class LatticeExplorer:
    """Enumerates all iterated-contraction states of a lattice and the
    contractible classes / fibration classes available at each state."""

    def __init__(self, lat: Lattice):
        self.lat = lat
        # every solution of C^2 = K.C = -d is effective by Riemann-Roch,
        # so candidates need no effectivity prefilter
        self.wall_candidates = _negative_candidates(lat)
        self.fibers = _fiber_candidates_raw(lat)
        self._contractible_cache: dict[frozenset, list] = {}
        self.states = self._explore()
        self.wall_classes = sorted(
            {c for s in self.states for c in self._contractible(s)}
        )

    def _contractible(self, state: frozenset):
        if state not in self._contractible_cache:
            lat = self.lat
            perp_gens = [
                g
                for g in lat.eff_gens
                if all(lat.dot(g, s) == 0 for s in state)
            ]
            out = []
            for c in self.wall_candidates:
                if c in state:
                    continue
                if any(lat.dot(c, s) != 0 for s in state):
                    continue
                if _expressible(c, perp_gens, lat, min_parts=2):
                    continue
                out.append(c)
            self._contractible_cache[state] = out
        return self._contractible_cache[state]

    def _explore(self):
        seen = {frozenset()}
        frontier = [frozenset()]
        while frontier:
            state = frontier.pop()
            for c in self._contractible(state):
                nxt = state | {c}
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def fibers_at(self, state: frozenset):
        lat = self.lat
        return [
            f
            for f in self.fibers
            if all(lat.dot(f, s) == 0 for s in state)
        ]

    def k_int(self, state: frozenset) -> Vec:
        v = list(self.lat.K)
        for s in state:
            v = [a - b for a, b in zip(v, s)]
        return tuple(v)

    def k_int_squared(self, state: frozenset) -> int:
        return self.lat.k_squared() + sum(-self.lat.selfint(s) for s in state)

    def _in_span(self, g, state) -> bool:
        lat = self.lat
        proj = [Fraction(c) for c in g]
        for s in state:
            coef = Fraction(lat.dot(g, s), lat.selfint(s))
            proj = [p - coef * sc for p, sc in zip(proj, s)]
        return all(p == 0 for p in proj)

    def is_del_pezzo(self, state: frozenset) -> bool:
        """The point-base model at this state has ample -K (lattice-level
        test for the generic configuration): K^2 >= 1 and K negative on
        every effective generator not collapsed by the contraction."""
        if self.k_int_squared(state) < 1:
            return False
        lat = self.lat
        kint = self.k_int(state)
        for g in lat.eff_gens:
            if self._in_span(g, state):
                continue
            if lat.dot(kint, g) >= 0:
                return False
        return True

    def is_conic_bundle(self, state: frozenset, f: Vec) -> bool:
        """-K relatively ample over the base: no effective generator is
        vertical (f-degree 0) with nonnegative K outside the contraction."""
        lat = self.lat
        kint = self.k_int(state)
        for g in lat.eff_gens:
            if self._in_span(g, state):
                continue
            if lat.dot(f, g) == 0 and lat.dot(kint, g) >= 0:
                return False
        return True


_EXPLORER_CACHE: dict[Lattice, LatticeExplorer] = {}


def explorer(lat: Lattice) -> LatticeExplorer:
    if lat not in _EXPLORER_CACHE:
        _EXPLORER_CACHE[lat] = LatticeExplorer(lat)
    return _EXPLORER_CACHE[lat]


def negative_classes(lat: Lattice) -> list[Vec]:
    """All wall classes: classes arising as pullbacks of contracted
    exceptional orbit classes in some iterated contraction of the
    lattice (e.g. exactly {L', E', E+E'} for the nested pair)."""
    return explorer(lat).wall_classes


_AMPLE_CACHE: dict[Lattice, Vec] = {}


def _ample_base(lat: Lattice) -> Vec:
    """An integral class strictly positive on every effective generator:
    -K itself, or -K plus a multiple of the fibration classes."""
    if lat in _AMPLE_CACHE:
        return _AMPLE_CACHE[lat]
    minus_k = tuple(-c for c in lat.K)
    fibers = _fiber_candidates_raw(lat)
    for t in range(0, 8):
        cand = list(minus_k)
        for f in fibers:
            cand = [a + t * b for a, b in zip(cand, f)]
        if all(lat.dot(tuple(cand), g) > 0 for g in lat.eff_gens):
            _AMPLE_CACHE[lat] = tuple(cand)
            return _AMPLE_CACHE[lat]
    raise AssertionError("no ample base class found")


def _project_away(lat: Lattice, v, state):
    """Orthogonal projection killing the contracted classes: the
    pullback of the pushforward of v (exact rationals).  One pass is
    enough because contracted classes are pairwise orthogonal."""
    out = [Fraction(c) for c in v]
    for s in state:
        num = sum(a * b for a, b in zip(out, _gram_row(lat, s)))
        out = [p - Fraction(num, lat.selfint(s)) * sc for p, sc in zip(out, s)]
    return tuple(out)


def _gram_row(lat: Lattice, s):
    n = lat.rank
    return tuple(sum(lat.gram[i][j] * s[j] for j in range(n)) for i in range(n))


def _dot_frac(lat: Lattice, u, v):
    n = lat.rank
    return sum(
        Fraction(u[i]) * lat.gram[i][j] * Fraction(v[j])
        for i in range(n)
        for j in range(n)
    )


def chambers(lat: Lattice) -> list[Chamber]:
    """All chambers of the big-cone decomposition of adjoint classes,
    each with an exact rational interior certificate D = K + (ample).

    The certificate for the chamber contracting S is K + t(P + eps A0)
    with A0 ample, P the pullback of the pushforward of A0 to the
    target (so P is perpendicular to S), t large enough to dominate the
    walls kept positive, and eps small enough to stay negative on S.
    """
    ex = explorer(lat)
    base = _ample_base(lat)
    walls = ex.wall_classes
    out = []
    for state in ex.states:
        proj = _project_away(lat, base, state)
        keep = [c for c in walls if c not in state]
        for c in keep:
            if _dot_frac(lat, proj, c) <= 0:
                raise AssertionError(
                    "wall in the span of the contracted set; certificate "
                    "construction does not apply"
                )
        t = Fraction(1)
        for c in keep:
            d = -lat.selfint(c)
            t = max(t, Fraction(d + 1) / _dot_frac(lat, proj, c))
        eps = Fraction(1)
        for s in state:
            d = -lat.selfint(s)
            eps = min(eps, Fraction(d, 2) / (t * lat.dot(base, s)))
        cert = tuple(
            Fraction(k) + t * (p + eps * b)
            for k, p, b in zip(lat.K, proj, base)
        )
        for s in state:
            if _dot_frac(lat, cert, s) >= 0:
                raise AssertionError("certificate not negative on contracted")
        for c in keep:
            if _dot_frac(lat, cert, c) <= 0:
                raise AssertionError("certificate not positive on kept wall")
        out.append(Chamber(lat, tuple(sorted(state)), cert))
    return sorted(out, key=lambda ch: (len(ch.contracted), ch.contracted))


def chamber_of(lat: Lattice, chamber_list, D) -> "Chamber":
    """The unique chamber whose sign conditions D.C <= 0 (contracted)
    and D.C > 0 (other wall classes) the big adjoint class D satisfies."""
    walls = explorer(lat).wall_classes
    matches = []
    for ch in chamber_list:
        inn = set(ch.contracted)
        ok = all(_dot_frac(lat, D, c) <= 0 for c in inn) and all(
            _dot_frac(lat, D, c) > 0 for c in walls if c not in inn
        )
        if ok:
            matches.append(ch)
    if len(matches) != 1:
        raise AssertionError(f"class lands in {len(matches)} chambers")
    return matches[0]


def run_ample_model(lat: Lattice, D, rng: random.Random | None = None):
    """Iteratively contract wall classes nonpositive against a big
    adjoint class D (of the form K + ample) until none remains; returns
    (Chamber, pushforward of D).  Raises NotBig when the class sits on
    or beyond a fibration face.  The result does not depend on the
    contraction order; passing an rng randomizes it to exercise that.
    """
    ex = explorer(lat)
    D = tuple(D)
    state = frozenset()
    while True:
        for f in ex.fibers_at(state):
            if _dot_frac(lat, D, f) <= 0:
                raise NotBig(f"nonpositive on the fibration class {lat.describe(f)}")
        cands = [c for c in ex._contractible(state) if _dot_frac(lat, D, c) <= 0]
        if not cands:
            break
        c = rng.choice(cands) if rng is not None else min(cands)
        state = state | {c}
    kint = ex.k_int(state)
    if _dot_frac(lat, D, kint) >= 0:
        raise NotBig("pushforward is not ample on the target")
    push = [Fraction(c) for c in D]
    for s in state:
        coef = _dot_frac(lat, D, s) / (-lat.selfint(s))
        push = [p + coef * sc for p, sc in zip(push, s)]
    if all(isinstance(c, int) for c in D):
        if any(p.denominator != 1 for p in push):
            raise AssertionError("pushforward of an integral class is not integral")
        push = [int(p) for p in push]
    chamber = Chamber(lat, tuple(sorted(state)), D)
    return chamber, tuple(push)


def codim_of_shared_face(c1: Chamber, c2: Chamber) -> int:
    """|I_2^- \\ I_1^-| for nested contracted sets: the relative Picard
    number of the connecting morphism and the codimension of the shared
    face of the chamber closures."""
    s1, s2 = set(c1.contracted), set(c2.contracted)
    if s1 <= s2:
        return len(s2 - s1)
    if s2 <= s1:
        return len(s1 - s2)
    raise NotNested("chambers are not nested")


@dataclass(frozen=True)
class Window:
    """A rank-1 fibration dominated by the lattice: either a contraction
    to a Picard-rank-1 del Pezzo (base = point) or a conic bundle over
    P^1 with the given fiber class."""

    lattice: Lattice
    contracted: tuple[Vec, ...]
    base: str  # "pt" or "P1"
    fiber: Vec | None = None

    @property
    def labels(self):
        return tuple(self.lattice.describe(v) for v in self.contracted)

    def to_json(self):
        return {
            "contracted": list(self.labels),
            "base": self.base,
            "fiber": self.lattice.describe(self.fiber) if self.fiber else None,
        }


def windows(lat: Lattice) -> list[Window]:
    """All rank-1 fibrations dominated by the lattice."""
    ex = explorer(lat)
    out = []
    for state in ex.states:
        rank_pt = lat.rank - len(state)
        if rank_pt == 1 and ex.is_del_pezzo(state):
            out.append(Window(lat, tuple(sorted(state)), "pt"))
        if rank_pt == 2:
            for f in ex.fibers_at(state):
                if ex.is_conic_bundle(state, f):
                    out.append(Window(lat, tuple(sorted(state)), "P1", f))
    return out
