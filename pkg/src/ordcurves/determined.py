"""Curves determined by a point set, ordinary curves, and curve richness.

A degree-d curve is determined by A when no other degree-d curve meets A in
a superset of its incidence.  With A not contained in any curve of degree at
most d, these are exactly the pullbacks of the hyperplanes spanned by lifted
subsets of A, so enumeration reduces to scanning C(d+2,2)-1 sized subsets
for affinely independent lifts, deduplicating the resulting normalized
hyperplane forms, and pulling each back to a polynomial.  Incidences are
always recomputed by exact evaluation, never inferred from hyperplane
membership, so coincident lifts cannot be double counted.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .bipoly import PlaneCurve
from .errors import HypothesisViolation, InvariantViolation
from .linalg import nullspace, rank
from .parallel import pmap, resolve_workers
from .veronese import HyperplaneForm, Point, as_point, homogeneous_lift, lift, tau_inverse


@dataclass(frozen=True)
class PointConfiguration:
    """Distinct rational plane points with a working degree d."""

    points: tuple[Point, ...]
    d: int

    @staticmethod
    def from_points(points, d: int) -> "PointConfiguration":
        pts = tuple(as_point(p) for p in points)
        if len(set(pts)) != len(pts):
            raise HypothesisViolation("distinct points", "configuration has duplicate points")
        if not pts:
            raise HypothesisViolation("nonempty configuration", "no points given")
        if d < 1:
            raise HypothesisViolation("d >= 1", f"d={d}")
        return PointConfiguration(pts, d)

    def __len__(self):
        return len(self.points)

    @functools.cached_property
    def lifted(self) -> tuple:
        return self.lifts(self.d)

    @functools.lru_cache(maxsize=None)
    def lifts(self, e: int) -> tuple:
        return tuple(lift(p, e) for p in self.points)

    @functools.lru_cache(maxsize=None)
    def homogeneous_lifts(self, e: int) -> tuple:
        return tuple(homogeneous_lift(p, e) for p in self.points)

    def subset(self, indices) -> tuple[Point, ...]:
        return tuple(self.points[i] for i in indices)

    def incidence_of(self, curve: PlaneCurve) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.points) if curve.contains(p))


def vanishing_dim(points, e: int) -> int:
    """Dimension of {p : deg p <= e, p(a) = 0 for all given a} incl. constants."""
    rows = [homogeneous_lift(p, e) for p in points]
    return comb(e + 2, 2) - rank(rows) if rows else comb(e + 2, 2)


def vanishing_space(points, e: int):
    """Canonical basis of coefficient vectors (const, monomials) vanishing on points."""
    rows = [homogeneous_lift(p, e) for p in points]
    return nullspace(rows, n_cols=comb(e + 2, 2))


def contained_in_curve(config: PointConfiguration, e: int):
    """Whether some curve of degree <= e contains every point; with witness.

    Returns (flag, witness PlaneCurve or None).
    """
    if e < 1:
        raise HypothesisViolation("e >= 1", f"e={e}")
    basis = vanishing_space(config.points, e)
    if not basis:
        return False, None
    vec = basis[0]
    return True, tau_inverse(HyperplaneForm.from_vector(e, vec))


@dataclass(frozen=True)
class CurveRecord:
    curve: PlaneCurve
    incidence: frozenset[int]
    hyperplanes: tuple[HyperplaneForm, ...]

    def to_json_obj(self):
        return {
            "polynomial": self.curve.representative.text(),
            "radical": self.curve.radical.text(),
            "incidence": sorted(self.incidence),
            "hyperplane_count": len(self.hyperplanes),
        }


@dataclass(frozen=True)
class DeterminedCurveSet:
    d: int
    n: int | None
    records: tuple[CurveRecord, ...]

    def __len__(self):
        return len(self.records)

    def radicals(self) -> frozenset:
        return frozenset(rec.curve for rec in self.records)

    def to_json_obj(self):
        return {
            "d": self.d,
            "n": self.n,
            "curves": [rec.to_json_obj() for rec in self.records],
        }


def _spanned_form(args):
    rows, d = args
    if rank(rows) != len(rows):
        return None
    basis = nullspace(rows)
    if len(basis) != 1:
        return None
    return HyperplaneForm.from_vector(d, basis[0])


def spanned_hyperplanes(config: PointConfiguration, workers: int = 1):
    """Normalized hyperplanes spanned by lifted subsets of the configuration.

    Every spanned hyperplane contains N = C(d+2,2)-1 affinely independent
    lifted points, so scanning N-subsets with full affine rank is complete.
    """
    d = config.d
    n_needed = comb(d + 2, 2) - 1
    hom = config.homogeneous_lifts(d)
    tasks = (
        ([hom[i] for i in idx], d)
        for idx in combinations(range(len(config)), n_needed)
    )
    forms = pmap(_spanned_form, tasks, workers=workers)
    return sorted({f.sort_key(): f for f in forms if f is not None}.values(),
                  key=HyperplaneForm.sort_key)


def enumerate_determined(config: PointConfiguration, workers=None) -> DeterminedCurveSet:
    """All curves of degree d determined by the configuration.

    Requires that no curve of degree <= d contains the whole set; then the
    determined curves are exactly the pullbacks of the spanned hyperplanes.
    """
    workers = resolve_workers(workers)
    d = config.d
    contained, witness = contained_in_curve(config, d)
    if contained:
        raise HypothesisViolation(
            "configuration not contained in a degree-<=d curve",
            f"witness curve {witness}",
        )
    by_curve: dict[PlaneCurve, list[HyperplaneForm]] = {}
    for form in spanned_hyperplanes(config, workers=workers):
        curve = tau_inverse(form)
        by_curve.setdefault(curve, []).append(form)
    # output order: lexicographic on each curve's smallest normalized form
    ordered = sorted(by_curve, key=lambda c: min(f.sort_key() for f in by_curve[c]))
    records = []
    for curve in ordered:
        forms = tuple(sorted(by_curve[curve], key=HyperplaneForm.sort_key))
        if len(forms) > d**d:
            raise InvariantViolation(
                "per-curve hyperplane fan-in exceeds d^d",
                {"d": d, "curve": curve.representative.text(), "fan_in": len(forms)},
            )
        incidence = config.incidence_of(curve)
        if len(incidence) < comb(d + 2, 2) - 1:
            raise InvariantViolation(
                "determined curve with fewer than C(d+2,2)-1 incidences",
                {"d": d, "curve": curve.representative.text(), "incidence": sorted(incidence)},
            )
        records.append(CurveRecord(curve, incidence, forms))
    return DeterminedCurveSet(d, None, tuple(records))


def ordinary_curves(config: PointConfiguration, n: int, workers=None) -> DeterminedCurveSet:
    """Determined curves meeting the configuration in at most n points."""
    full = enumerate_determined(config, workers=workers)
    kept = tuple(rec for rec in full.records if len(rec.incidence) <= n)
    return DeterminedCurveSet(config.d, n, kept)


def max_curve_richness(config: PointConfiguration, e: int):
    """Largest |A & C| over curves C of degree <= e, with a witness subset.

    Any C(e+2,2)-1 points lie on some curve of degree <= e, so sizes above
    that threshold are scanned top-down for a nonzero vanishing space.
    """
    if e < 1:
        raise HypothesisViolation("e >= 1", f"e={e}")
    pts = config.points
    floor_size = comb(e + 2, 2) - 1
    if len(pts) <= floor_size:
        return len(pts), tuple(range(len(pts)))
    for size in range(len(pts), floor_size, -1):
        for idx in combinations(range(len(pts)), size):
            if vanishing_dim([pts[i] for i in idx], e) > 0:
                return size, idx
    return floor_size, tuple(range(floor_size))


def default_regularity_threshold(d: int) -> Fraction:
    """Default richness threshold 1 / 2^(2^(3d+8)); far below any small set's reach."""
    return Fraction(1, 2 ** (2 ** (3 * d + 8)))


@dataclass(frozen=True)
class RegularityReport:
    is_regular: bool
    ratio: Fraction
    threshold: Fraction
    witness: tuple[int, ...]

    def to_json_obj(self):
        return {
            "is_regular": self.is_regular,
            "ratio": str(self.ratio),
            "threshold": str(self.threshold),
            "witness": list(self.witness),
        }


def regularity_report(config: PointConfiguration, d: int | None = None,
                      threshold: Fraction | None = None) -> RegularityReport:
    """Compare the richest degree-<=d curve against a fraction of |A|.

    The default threshold is astronomically small, so any nonempty desk-scale
    configuration reports not regular; pass a custom threshold to probe
    structure.
    """
    d = config.d if d is None else d
    if threshold is None:
        threshold = default_regularity_threshold(d)
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise HypothesisViolation("threshold > 0", f"threshold={threshold}")
    size, witness = max_curve_richness(config, d)
    ratio = Fraction(size, len(config))
    return RegularityReport(ratio <= threshold, ratio, threshold, witness)
