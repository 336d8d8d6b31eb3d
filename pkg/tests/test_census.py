import itertools
import json
import math
import random
from fractions import Fraction

import pytest

from cremona import general_position as gp
from cremona.bertini_census import (
    CheckpointCorrupt,
    ClassKey,
    _census_range,
    _checkpoint_record,
    _merge_keys,
    _read_checkpoint,
    canonical_class,
    enumerate_orbits,
    mq_bound,
    mq_cross_check,
    pgl3_elements,
    pgl3_order,
    run_census,
    total_degree8_orbits,
    verify_orbit_lemma,
)
from cremona.field_tower import get_ctx
from cremona.general_position import GaloisOrbit8, orbit_from_seed
from cremona.nodal_cubic import NodalCubicNF
from cremona.plane_geometry import ProjTransform, apply

from conftest import (
    Q2_CLASS_COUNT,
    Q2_GENERAL_POSITION,
    Q2_NODAL_CLASSES,
    Q2_TOTAL_ORBITS,
)


def test_pgl3_element_counts():
    g2 = list(pgl3_elements(2))
    assert len(g2) == 168 == pgl3_order(2)
    assert len(set(g2)) == 168
    assert ProjTransform.identity(2) in g2
    assert sum(1 for _ in pgl3_elements(3)) == 5616 == pgl3_order(3)


def test_identity_normalization_idempotent():
    ident = ProjTransform.identity(3)
    assert ProjTransform(3, ident.matrix).matrix == ident.matrix


def test_total_orbit_formula():
    assert total_degree8_orbits(2) == (65793 - 273) // 8 == 8190
    assert total_degree8_orbits(3) == 5380830


def test_enumerate_orbits_q2_count_and_validity():
    count = 0
    prev_seed = None
    for orbit in enumerate_orbits(2):
        count += 1
        if count <= 50 or count % 500 == 0:
            assert len(set(orbit.points)) == 8
            assert orbit.seed == min(orbit.points)
        if prev_seed is not None and count <= 50:
            assert orbit.seed > prev_seed
        prev_seed = orbit.seed
    assert count == 8190


def test_orbit_stream_prefix_q3():
    stream = enumerate_orbits(3)
    for _ in range(25):
        orbit = next(stream)
        assert len(set(orbit.points)) == 8
        frob = orbit.ctx.frobenius
        for p in orbit.points:
            assert tuple(frob(c) for c in p) in set(orbit.points)


def test_canonical_class_invariance_and_stability():
    ctx = get_ctx(2, 8)
    nf = NodalCubicNF(2, 1)
    orbit = orbit_from_seed(nf, ctx.element(2))
    key = canonical_class(orbit)
    rnd = random.Random(41)
    group = list(pgl3_elements(2))
    for g in rnd.sample(group, 12):
        image = GaloisOrbit8(ctx, [apply(g, p).coords for p in orbit.proj_points()])
        assert canonical_class(image) == key
    assert canonical_class(orbit) == key  # stable across calls
    # distinct classes separate
    other = orbit_from_seed(nf, ctx.element(3))
    assert canonical_class(other) != key


def test_mq_bound_values():
    assert mq_bound(2) == 2
    assert mq_bound(3) == 12
    assert mq_bound(4) == Fraction(4095, 640)
    assert mq_bound(5) == Fraction(5 ** 6 - 1, 640)


def test_mq_cross_check_q2_q3():
    r2 = mq_cross_check(2)
    assert r2["N1"] == 21 and r2["N2"] == 4 and r2["N3"] == 27
    assert r2["pgl3_order"] == 168
    assert r2["product"] == Fraction(9, 8)
    assert math.ceil(r2["product"]) == 2
    r3 = mq_cross_check(3)
    assert r3["product"] == 12


@pytest.mark.parametrize("q", [7, 13, 31, 43, 61, 73, 97])
def test_mq_identity_divisible_branch(q):
    rep = mq_cross_check(q)
    assert rep["divide_by_3"]
    assert rep["product"] == rep["closed_form"] == Fraction(q ** 6 - 1, 640)


@pytest.mark.parametrize("q", [5, 11, 17, 23, 29, 41, 53, 59, 71, 83, 89, 101])
def test_mq_identity_nondivisible_branch(q):
    rep = mq_cross_check(q)
    assert not rep["divide_by_3"]
    assert rep["product"] == 3 * rep["closed_form"]
    assert rep["product"] >= rep["bound"]


def test_orbit_lemma_q2_exhaustive():
    report = verify_orbit_lemma(2)
    assert report["checked"] == 240
    assert report["violations"] == []
    assert all((2 ** j - 1) % 17 != 0 for j in range(1, 8))


def test_orbit_lemma_q3_generators():
    report = verify_orbit_lemma(3)
    assert report["checked"] == 2560
    assert report["violations"] == []


def test_census_q2_golden(census_q2):
    res = census_q2
    assert res.total_degree8_orbits == Q2_TOTAL_ORBITS
    assert res.general_position_count == Q2_GENERAL_POSITION
    assert res.pgl3_class_count == Q2_CLASS_COUNT
    assert res.bound_satisfied and res.pgl3_class_count >= 2
    assert res.nodal_class_count == Q2_NODAL_CLASSES
    assert res.non_nodal_class_count == Q2_CLASS_COUNT - Q2_NODAL_CLASSES
    # every class has the full group as its orbit: trivial stabilizers
    assert Q2_GENERAL_POSITION == Q2_CLASS_COUNT * 168
    assert len(res.class_reps) == Q2_CLASS_COUNT


def test_census_checkpoint_resume_identical(census_q2, tmp_path):
    res = run_census(2, mode="exact", checkpoint_path=census_q2.checkpoint_path)
    assert res.pgl3_class_count == census_q2.pgl3_class_count
    assert res.general_position_count == census_q2.general_position_count
    assert res.class_reps == census_q2.class_reps


def test_checkpoint_corruption_detected(tmp_path):
    path = tmp_path / "bad.ckpt"
    path.write_text('{"version": 1, "q": 2, "lo": 0\n')
    with pytest.raises(CheckpointCorrupt):
        _read_checkpoint(str(path), 2)
    path.write_text('{"version": 99, "q": 2, "lo": 0, "hi": 1, "orbits": 0, "gp": 0, "keys": []}\n')
    with pytest.raises(CheckpointCorrupt):
        _read_checkpoint(str(path), 2)


def test_checkpoint_roundtrip(tmp_path):
    path = tmp_path / "rt.ckpt"
    orbits, gpc, keys = _census_range((2, 0, 4000, True))
    with open(path, "w") as fh:
        _checkpoint_record(fh, 2, 0, 4000, orbits, gpc, keys)
    done = _read_checkpoint(str(path), 2)
    assert done == {(0, 4000): (orbits, gpc, keys)}


def test_parallel_reduction_deterministic():
    # the same index range processed in one chunk or four gives the same
    # merged class keys (associative commutative reduce)
    ranges = [(0, 6000), (6000, 12000), (12000, 18000), (18000, 24000)]
    single = _census_range((2, 0, 24000, True))
    import multiprocessing as mp

    with mp.Pool(4) as pool:
        parts = pool.map(_census_range, [(2, lo, hi, True) for lo, hi in ranges])
    merged: dict = {}
    orbits = gpc = 0
    for o, g, part in parts:
        orbits += o
        gpc += g
        _merge_keys(merged, part)
    assert orbits == single[0]
    assert gpc == single[1]
    assert merged == single[2]


def test_sampled_census_deterministic_and_monotone(census_q2):
    r1 = run_census(2, mode="sampled", sample_size=60, rng_seed=5)
    r2 = run_census(2, mode="sampled", sample_size=60, rng_seed=5)
    assert r1.pgl3_class_count == r2.pgl3_class_count
    assert r1.class_reps == r2.class_reps
    assert r1.pgl3_class_count <= census_q2.pgl3_class_count
    assert r1.general_position_count <= r1.sample_size


def test_sampled_census_distinct_keys_are_certified():
    res = run_census(2, mode="sampled", sample_size=40, rng_seed=9)
    assert res.pgl3_class_count <= res.general_position_count
    assert res.mode == "sampled"


def test_every_class_key_partitions_verdict(census_q2):
    # spot check: representatives of distinct classes are inequivalent
    ctx = get_ctx(2, 8)
    reps = [tuple(tuple(p) for p in rep) for rep in census_q2.class_reps[:6]]
    keys = {canonical_class(GaloisOrbit8(ctx, rep)) for rep in reps}
    assert len(keys) == len(reps)
    for rep in reps:
        assert gp.general_position_report(list(rep), ctx).ok


def test_census_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_census(5)
    with pytest.raises(ValueError):
        run_census(2, mode="other")
    with pytest.raises(ValueError):
        run_census(2, mode="sampled", sample_size=0)
