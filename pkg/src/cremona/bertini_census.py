"""Exhaustive census of Bertini classes over F_q, q in {2, 3}.

A Bertini involution with a base point of degree 8 corresponds to a
general-position degree-8 orbit in P^2(F_{q^8}); counting such orbits
up to the action of PGL_3(F_q) gives the number of Bertini classes the
construction produces.  The census enumerates every degree-8 orbit by
minimal seed, filters by the general-position test, and reduces each
survivor to a canonical class key (the minimum of the serialized orbit
over all |PGL_3(F_q)| transformations, prefixed by a cheap invariant).

The lower bound M_q for the class count, and the exact-rational identity
between its closed form (q^6 - 1)/640 and the counting product
N1.N2.N3 / (12 |PGL_3|), are implemented in `mq_bound` / `mq_cross_check`.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .field_tower import FieldCtx, euler_phi, get_ctx
from .general_position import GaloisOrbit8, general_position_report
from .nodal_cubic import NodalCubicNF, count_nodal_members
from .plane_geometry import ProjTransform, apply_raw, normalize_coords

__all__ = [
    "CensusResult",
    "CheckpointCorrupt",
    "ClassKey",
    "ResourceBudgetExceeded",
    "canonical_class",
    "enumerate_orbits",
    "mq_bound",
    "mq_cross_check",
    "pgl3_elements",
    "pgl3_order",
    "run_census",
    "total_degree8_orbits",
    "verify_orbit_lemma",
]

RESULT_VERSION = 1


class CheckpointCorrupt(RuntimeError):
    """A checkpoint file failed to parse or carries a stale version."""


class ResourceBudgetExceeded(RuntimeError):
    """Sampled mode ran out of budget before reaching the target."""


def pgl3_order(q: int) -> int:
    """|PGL_3(F_q)| = q^3 (q^3 - 1)(q^2 - 1)."""
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


def total_degree8_orbits(q: int) -> int:
    """(|P^2(F_{q^8})| - |P^2(F_{q^4})|) / 8 = (q^16 - q^4) / 8."""
    return (q ** 16 - q ** 4) // 8


def pgl3_elements(q: int):
    """Every element of PGL_3(F_q) exactly once, in normalized form
    (first nonzero entry in row-major order equal to 1), deterministic
    lexicographic order."""
    from .plane_geometry import _det3_mod

    for flat in itertools.product(range(q), repeat=9):
        lead = next((x for x in flat if x), None)
        if lead != 1:
            continue
        rows = (flat[0:3], flat[3:6], flat[6:9])
        if _det3_mod(rows, q) == 0:
            continue
        yield ProjTransform(q, rows)


# ----------------------------------------------------------------------
# orbit enumeration

def _point_stream(q: int):
    """Normalized points of P^2(F_{q^8}) in lexicographic order of their
    coordinate triples: [0:0:1], [0:1:z], [1:y:z]."""
    size = q ** 8
    yield (0, 0, 1)
    for z in range(size):
        yield (0, 1, z)
    for y in range(size):
        for z in range(size):
            yield (1, y, z)


def _orbit_of(coords, ctx):
    """Frobenius orbit if of size exactly 8, else None; first element is
    the given point."""
    frob = ctx.frobenius
    cur = coords
    orbit = [cur]
    for _ in range(7):
        cur = (frob(cur[0]), frob(cur[1]), frob(cur[2]))
        if cur == coords:
            return None
        orbit.append(cur)
    return orbit if (frob(cur[0]), frob(cur[1]), frob(cur[2])) == coords else None


def enumerate_orbits(q: int):
    """Each degree-8 orbit of P^2(F_{q^8}) exactly once, as a
    GaloisOrbit8, keyed and ordered by minimal seed."""
    ctx = get_ctx(q, 8)
    for coords in _point_stream(q):
        orbit = _orbit_of(coords, ctx)
        if orbit is not None and min(orbit) == coords:
            yield GaloisOrbit8(ctx, orbit)


# ----------------------------------------------------------------------
# canonical class keys

@dataclass(frozen=True, order=True)
class ClassKey:
    """PGL_3(F_q)-canonical form of an orbit: a cheap PGL-invariant
    prefix (capped nodal-member count of the orbit's cubic pencil, or -1
    when disabled) plus the minimal serialized orbit over the group."""

    prefix: int
    serialized: tuple

    def to_json(self):
        return {"prefix": self.prefix, "orbit": [list(p) for p in self.serialized]}


def _pgl_matrices(q: int):
    return tuple(g.matrix for g in pgl3_elements(q))


_MATRIX_CACHE: dict[int, tuple] = {}


def _matrices(q: int):
    if q not in _MATRIX_CACHE:
        _MATRIX_CACHE[q] = _pgl_matrices(q)
    return _MATRIX_CACHE[q]


def canonical_class(orbit: GaloisOrbit8, prefix_cap: int = 2,
                    use_prefix: bool = True) -> ClassKey:
    """Min-canonical form over all of PGL_3(F_q).

    Two orbits get the same key iff they are PGL_3(F_q)-equivalent.  The
    prefix is the nodal-member count of the orbit's pencil over
    extensions of degree <= prefix_cap (a PGL invariant, used to bucket
    orbits before the expensive minimization in large censuses).
    """
    ctx = orbit.ctx
    prefix = count_nodal_members(orbit, prefix_cap) if use_prefix else -1
    best = None
    for mat in _matrices(ctx.p):
        image = tuple(sorted(apply_raw(mat, p, ctx) for p in orbit.points))
        if best is None or image < best:
            best = image
    return ClassKey(prefix, best)


# ----------------------------------------------------------------------
# the M_q bound

def mq_bound(q: int):
    """The lower bound M_q for the number of Bertini classes over F_q:
    M_2 = 2, M_3 = 12, and (q^6 - 1)/640 for q >= 4."""
    if q == 2:
        return Fraction(2)
    if q == 3:
        return Fraction(12)
    return Fraction(q ** 6 - 1, 640)


def mq_cross_check(q: int) -> dict:
    """Recompute M_q from the counting product N1.N2.N3 / (12 |PGL_3|)
    in exact rational arithmetic and compare with the closed form.

    N1 = (q^2+q+1) q(q+1)/2 counts (node, tangent pair) poses, N2 counts
    posed nodal cubics ((q-1)^2 q^2, divided by 3 only when 3 | q-1),
    and N3 counts general-position orbits on one cubic.  For q = 2 all
    240 elements outside F_16 enter N3, and for q = 3 the exact
    generator count phi(3^8 - 1) = 2560 does; both use the 9/10 twist
    ratio.  With the 1/3 present the product telescopes to exactly
    (q^6-1)/640; without it (3 not dividing q-1) the product is three
    times the closed form, so the closed form stays a valid lower bound.
    """
    n1 = Fraction((q * q + q + 1) * q * (q + 1), 2)
    divide_by_3 = (q - 1) % 3 == 0
    n2 = Fraction((q - 1) ** 2 * q * q, 3 if divide_by_3 else 1)
    if q == 2:
        orbit_pool = Fraction(240)
    elif q == 3:
        orbit_pool = Fraction(euler_phi(3 ** 8 - 1))
    else:
        orbit_pool = Fraction(q ** 6 - 1)
    n3 = Fraction(9, 10) * orbit_pool / 8
    product = n1 * n2 * n3 / (12 * pgl3_order(q))
    closed = Fraction(q ** 6 - 1, 640)
    return {
        "q": q,
        "N1": n1,
        "N2": n2,
        "N3": n3,
        "pgl3_order": pgl3_order(q),
        "product": product,
        "closed_form": closed,
        "divide_by_3": divide_by_3,
        "bound": mq_bound(q),
    }


# ----------------------------------------------------------------------
# the orbit lemma

def verify_orbit_lemma(q: int) -> dict:
    """Check that distinct conjugates x != x^(q^i) never lie in the same
    F_{q^4}*-coset, for all x outside F_{q^4} when q = 2 and for all
    generators of F_{q^8}* otherwise.  Returns a report with the number
    of elements checked and the list of violations (expected empty)."""
    ctx = get_ctx(q, 8)
    units = ctx.size - 1
    if q == 2:
        eligible = [e for e in range(1, ctx.size) if not ctx.in_subfield(e, 4)]
    else:
        eligible = [e for e in range(1, ctx.size) if ctx.order(e) == units]
    violations = []
    for x in eligible:
        xi = x
        for i in range(1, 8):
            xi = ctx.frobenius(xi)
            if xi == x:
                continue
            if ctx.in_subfield(ctx.div(xi, x), 4):
                violations.append((x, i))
    return {
        "q": q,
        "checked": len(eligible),
        "conjugations": 7,
        "violations": violations,
    }


# ----------------------------------------------------------------------
# the census driver

@dataclass
class CensusResult:
    q: int
    mode: str
    total_degree8_orbits: int
    general_position_count: int
    pgl3_class_count: int
    mq_bound: str
    bound_satisfied: bool
    elapsed_ms: int
    threads: int = 1
    sample_size: int | None = None
    nodal_class_count: int = 0
    non_nodal_class_count: int = 0
    version: int = RESULT_VERSION
    class_reps: list = field(default_factory=list, repr=False)

    def to_json(self, with_reps: bool = False) -> dict:
        out = {
            "q": self.q,
            "mode": self.mode,
            "total_degree8_orbits": self.total_degree8_orbits,
            "general_position_count": self.general_position_count,
            "pgl3_class_count": self.pgl3_class_count,
            "mq_bound": self.mq_bound,
            "bound_satisfied": self.bound_satisfied,
            "elapsed_ms": self.elapsed_ms,
            "threads": self.threads,
            "sample_size": self.sample_size,
            "nodal_class_count": self.nodal_class_count,
            "non_nodal_class_count": self.non_nodal_class_count,
            "version": self.version,
        }
        if with_reps:
            out["class_reps"] = self.class_reps
        return out


def _seed_ranges(q: int, chunk: int):
    """Split the linear index space of the point stream into ranges."""
    total = q ** 16 + q ** 8 + 1
    lo = 0
    while lo < total:
        yield (lo, min(lo + chunk, total))
        lo += chunk


def _point_at(q: int, index: int):
    size = q ** 8
    if index == 0:
        return (0, 0, 1)
    index -= 1
    if index < size:
        return (0, 1, index)
    index -= size
    return (1, index // size, index % size)


def _census_range(args):
    """Process point indices [lo, hi): returns orbit/GP counts and the
    class keys (with minimal representative orbit per key)."""
    q, lo, hi, use_prefix = args
    ctx = get_ctx(q, 8)
    orbits = 0
    gp = 0
    keys = {}
    for index in range(lo, hi):
        coords = _point_at(q, index)
        orbit_pts = _orbit_of(coords, ctx)
        if orbit_pts is None or min(orbit_pts) != coords:
            continue
        orbits += 1
        report = general_position_report(orbit_pts, ctx)
        if not report.ok:
            continue
        gp += 1
        orbit = GaloisOrbit8(ctx, orbit_pts)
        key = canonical_class(orbit, use_prefix=use_prefix)
        rep = min(keys[key], orbit.points) if key in keys else orbit.points
        keys[key] = rep
    return orbits, gp, keys


def _merge_keys(target: dict, part: dict):
    for key, rep in part.items():
        if key not in target or rep < target[key]:
            target[key] = rep


def _nodal_class_keys(q: int, use_prefix: bool):
    """Class keys of the general-position orbits produced by the nodal
    construction (all parameters with full orbit, all normal forms)."""
    ctx = get_ctx(q, 8)
    keys = set()
    seen = set()
    for c0 in range(1, q):
        nf = NodalCubicNF(q, c0)
        for e in range(1, ctx.size):
            if ctx.in_subfield(e, 4):
                continue
            orbit_pts = _orbit_of(_param_coords(nf, e, ctx), ctx)
            if orbit_pts is None:
                continue
            orbit = GaloisOrbit8(ctx, orbit_pts)
            if orbit.points in seen:
                continue
            seen.add(orbit.points)
            if general_position_report(orbit.points, ctx).ok:
                keys.add(canonical_class(orbit, use_prefix=use_prefix))
    return keys


def _param_coords(nf, e, ctx):
    a3 = ctx.pow(e, 3)
    y = ctx.div(ctx.mul(nf.c0, ctx.sub(a3, 1)), e)
    return (e, y, 1)


def _write_checkpoint(fh, record):
    fh.write(json.dumps(record, separators=(",", ":")) + "\n")
    fh.flush()
    os.fsync(fh.fileno())


def _read_checkpoint(path, q):
    done = {}
    if not path or not os.path.exists(path):
        return done
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                if rec.get("version") != RESULT_VERSION or rec.get("q") != q:
                    raise ValueError("stale checkpoint record")
                keys = {
                    ClassKey(k["prefix"], tuple(tuple(p) for p in k["orbit"])):
                    tuple(tuple(p) for p in rep)
                    for k, rep in rec["keys"]
                }
                done[(rec["lo"], rec["hi"])] = (rec["orbits"], rec["gp"], keys)
            except (ValueError, KeyError, TypeError) as exc:
                raise CheckpointCorrupt(f"{path}: {exc}") from exc
    return done


def run_census(
    q: int,
    mode: str = "exact",
    threads: int = 1,
    checkpoint_path: str | None = None,
    sample_size: int | None = None,
    rng_seed: int = 0,
    use_prefix: bool = True,
    chunk: int = 1 << 14,
) -> CensusResult:
    """Count general-position degree-8 orbits and their PGL_3(F_q)
    classes; assert the class count meets the M_q bound.

    Exact mode streams every orbit (q = 2 takes minutes; q = 3 is a
    long-running job, resumable through `checkpoint_path`).  Sampled
    mode tests `sample_size` distinct orbits chosen by a seeded RNG and
    reports a certified lower bound on the class count (distinct
    canonical keys are distinct classes; it can never overcount).
    """
    if q not in (2, 3):
        raise ValueError("exhaustive censuses are supported for q in {2, 3}")
    if mode not in ("exact", "sampled"):
        raise ValueError("mode must be 'exact' or 'sampled'")
    t0 = time.monotonic()
    total = total_degree8_orbits(q)
    keys: dict = {}
    orbits = 0
    gp = 0

    if mode == "exact":
        done = _read_checkpoint(checkpoint_path, q)
        ranges = list(_seed_ranges(q, chunk))
        todo = [r for r in ranges if r not in done]
        for _, (o, g, part) in sorted(done.items()):
            orbits += o
            gp += g
            _merge_keys(keys, part)
        ck = open(checkpoint_path, "a") if checkpoint_path else None
        try:
            jobs = [(q, lo, hi, use_prefix) for lo, hi in todo]
            if threads > 1 and jobs:
                import multiprocessing as mp

                with mp.Pool(threads) as pool:
                    for (lo, hi), (o, g, part) in zip(
                        todo, pool.imap(_census_range, jobs)
                    ):
                        orbits += o
                        gp += g
                        _merge_keys(keys, part)
                        if ck:
                            _checkpoint_record(ck, q, lo, hi, o, g, part)
            else:
                for (lo, hi), job in zip(todo, jobs):
                    o, g, part = _census_range(job)
                    orbits += o
                    gp += g
                    _merge_keys(keys, part)
                    if ck:
                        _checkpoint_record(ck, q, lo, hi, o, g, part)
        finally:
            if ck:
                ck.close()
        if orbits != total:
            raise AssertionError(
                f"orbit stream count {orbits} != formula {total}"
            )
    else:
        if not sample_size or sample_size < 1:
            raise ValueError("sampled mode needs a positive sample_size")
        import random

        rng = random.Random(rng_seed)
        ctx = get_ctx(q, 8)
        index_space = q ** 16 + q ** 8 + 1
        tested = set()
        budget = 200 * sample_size
        while len(tested) < sample_size:
            budget -= 1
            if budget <= 0:
                raise ResourceBudgetExceeded(
                    f"could not reach {sample_size} orbits"
                )
            coords = _point_at(q, rng.randrange(index_space))
            orbit_pts = _orbit_of(coords, ctx)
            if orbit_pts is None:
                continue
            canon = tuple(sorted(orbit_pts))
            if canon in tested:
                continue
            tested.add(canon)
            orbits += 1
            report = general_position_report(canon, ctx)
            if not report.ok:
                continue
            gp += 1
            key = canonical_class(GaloisOrbit8(ctx, canon), use_prefix=use_prefix)
            if key not in keys or canon < keys[key]:
                keys[key] = canon

    nodal_keys = _nodal_class_keys(q, use_prefix) if q == 2 else set()
    bound = mq_bound(q)
    class_count = len(keys)
    result = CensusResult(
        q=q,
        mode=mode,
        total_degree8_orbits=total,
        general_position_count=gp,
        pgl3_class_count=class_count,
        mq_bound=str(bound),
        bound_satisfied=class_count >= math.ceil(bound),
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        threads=threads,
        sample_size=sample_size,
        nodal_class_count=len(nodal_keys & set(keys)) if nodal_keys else 0,
        non_nodal_class_count=(
            class_count - len(nodal_keys & set(keys)) if nodal_keys else 0
        ),
        class_reps=[
            [list(p) for p in rep] for _, rep in sorted(keys.items())
        ],
    )
    return result


def _checkpoint_record(fh, q, lo, hi, orbits, gp, keys):
    record = {
        "version": RESULT_VERSION,
        "q": q,
        "lo": lo,
        "hi": hi,
        "orbits": orbits,
        "gp": gp,
        "keys": [
            [key.to_json(), [list(p) for p in rep]] for key, rep in keys.items()
        ],
    }
    _write_checkpoint(fh, record)
