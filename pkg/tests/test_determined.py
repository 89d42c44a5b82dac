import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from ordcurves.bipoly import poly_gcd
from ordcurves.determined import (
    PointConfiguration,
    contained_in_curve,
    default_regularity_threshold,
    enumerate_determined,
    max_curve_richness,
    ordinary_curves,
    regularity_report,
)
from ordcurves.errors import HypothesisViolation

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
THREE_PLUS_ONE = [(0, 0), (1, 0), (2, 0), (0, 1)]
OCTET = [(0, 0), (1, 0), (0, 1), (3, 5), (2, 7), (5, 1), (1, 4), (6, 2)]


def brute_force_lines(points):
    """All lines through >= 2 points with their incidences, by pair scan."""
    seen = {}
    for i, j in combinations(range(len(points)), 2):
        (x1, y1), (x2, y2) = points[i], points[j]
        a, b = y2 - y1, x1 - x2
        c = -(a * x1 + b * y1)
        vec = (a, b, c)
        first = next(v for v in vec if v != 0)
        key = tuple(Fraction(v) / first for v in vec)
        if key not in seen:
            seen[key] = frozenset(
                k
                for k, (x, y) in enumerate(points)
                if key[0] * x + key[1] * y + key[2] == 0
            )
    return set(seen.values())


def test_contained_in_curve():
    collinear = PointConfiguration.from_points([(0, 0), (1, 0), (2, 0)], 1)
    flag, witness = contained_in_curve(collinear, 1)
    assert flag and witness.radical.terms
    assert all(witness.contains(p) for p in collinear.points)
    square = PointConfiguration.from_points(SQUARE, 1)
    assert not contained_in_curve(square, 1)[0]
    # any small set lies on a curve of degree <= e
    small = PointConfiguration.from_points(SQUARE, 2)
    assert contained_in_curve(small, 2)[0]


def test_enumerate_determined_matches_pair_bruteforce():
    for pts in (SQUARE, THREE_PLUS_ONE, OCTET):
        config = PointConfiguration.from_points(pts, 1)
        got = enumerate_determined(config)
        assert {rec.incidence for rec in got.records} == brute_force_lines(config.points)


def test_enumerate_determined_examples():
    square = enumerate_determined(PointConfiguration.from_points(SQUARE, 1))
    assert len(square) == 6
    assert all(len(rec.incidence) == 2 for rec in square.records)
    tpo = enumerate_determined(PointConfiguration.from_points(THREE_PLUS_ONE, 1))
    assert len(tpo) == 4
    assert sorted(len(rec.incidence) for rec in tpo.records) == [2, 2, 2, 3]


def test_enumerate_determined_precondition():
    collinear = PointConfiguration.from_points([(0, 0), (1, 0), (2, 0)], 1)
    with pytest.raises(HypothesisViolation):
        enumerate_determined(collinear)


def test_ordinary_examples():
    octet = PointConfiguration.from_points(OCTET, 2)
    assert len(ordinary_curves(octet, comb(4, 2) - 2)) == 0  # n below C(d+2,2)-1
    assert len(ordinary_curves(PointConfiguration.from_points(SQUARE, 1), 2)) == 6
    assert len(ordinary_curves(PointConfiguration.from_points(THREE_PLUS_ONE, 1), 2)) == 3


def test_every_determined_curve_is_rich_enough():
    for d, pts in ((1, OCTET), (2, OCTET)):
        config = PointConfiguration.from_points(pts, d)
        for rec in enumerate_determined(config).records:
            assert len(rec.incidence) >= comb(d + 2, 2) - 1
            assert len(rec.hyperplanes) <= d**d


def test_bezout_sanity_on_enumerated_pairs():
    config = PointConfiguration.from_points(OCTET, 2)
    records = enumerate_determined(config).records
    for r1, r2 in combinations(records, 2):
        if poly_gcd(r1.curve.radical, r2.curve.radical).is_constant:
            assert len(r1.incidence & r2.incidence) <= 4


def test_sylvester_gallai_on_random_sets():
    rng = random.Random(2)
    for _ in range(10):
        pts = set()
        while len(pts) < 6:
            pts.add((rng.randint(-10, 10), rng.randint(-10, 10)))
        config = PointConfiguration.from_points(sorted(pts), 1)
        if contained_in_curve(config, 1)[0]:
            continue
        assert len(ordinary_curves(config, 2)) > 0


def test_max_curve_richness_examples():
    assert max_curve_richness(PointConfiguration.from_points(SQUARE, 1), 1)[0] == 2
    size, witness = max_curve_richness(
        PointConfiguration.from_points(THREE_PLUS_ONE, 1), 1
    )
    assert size == 3 and set(witness) == {0, 1, 2}
    small = PointConfiguration.from_points(SQUARE, 2)
    assert max_curve_richness(small, 2)[0] == 4


def test_regularity_report():
    square = PointConfiguration.from_points(SQUARE, 1)
    default = regularity_report(square, 1)
    assert not default.is_regular
    assert default.threshold == default_regularity_threshold(1)
    loose = regularity_report(square, 1, Fraction(3, 4))
    assert loose.is_regular and loose.ratio == Fraction(1, 2)
    tpo = PointConfiguration.from_points(THREE_PLUS_ONE, 1)
    tight = regularity_report(tpo, 1, Fraction(1, 2))
    assert not tight.is_regular and tight.ratio == Fraction(3, 4)


def test_regularity_threshold_positive():
    with pytest.raises(HypothesisViolation):
        regularity_report(PointConfiguration.from_points(SQUARE, 1), 1, Fraction(0))


def test_enumeration_independent_of_workers():
    config = PointConfiguration.from_points(OCTET, 2)
    serial = enumerate_determined(config, workers=1)
    parallel = enumerate_determined(config, workers=2)
    assert serial.to_json_obj() == parallel.to_json_obj()


def test_deterministic_output_order():
    config = PointConfiguration.from_points(OCTET, 2)
    a = enumerate_determined(config).to_json_obj()
    b = enumerate_determined(config).to_json_obj()
    assert a == b
