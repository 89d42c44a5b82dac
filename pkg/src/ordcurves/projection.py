"""Hyperprojection pipeline: from a verified basis to ordinary curves.

The lifted span of a verified basis B is a codimension-3 flat F in lift
space, so the three independent affine forms vanishing on F define a
projection of the complement onto the projective plane; hyperplanes through
F correspond bijectively to projective lines.  Points of A whose lift lands
in F are collected as D; the exceptional catalog consists of the lower
degree curves meeting B in one point fewer than the forbidden threshold,
and each such curve C contributes the flat spanned by the lifts of C and B,
whose dimension must come out exactly one above F — that pins every point
of C outside D to a single image point, the forbidden set T.  Lines through
exactly two surviving image points and no forbidden point pull back to
spanned hyperplanes and hence to determined curves whose incidence with A
is controlled by twice the maximal fiber size plus |D & A|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .bipoly import BivariatePolynomial, PlaneCurve
from .determined import (
    CurveRecord,
    DeterminedCurveSet,
    PointConfiguration,
    contained_in_curve,
    vanishing_space,
)
from .errors import HypothesisViolation, InvariantViolation
from .linalg import AffineFlat, flat_from_equations, flat_span, rank, vec_dot
from .ndfamilies import BasisCandidate, _resolve_basis_points, nd_verify
from .veronese import HyperplaneForm, ambient_dim, lift, monomial_order, tau_inverse

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^2 with first nonzero homogeneous coordinate scaled to 1."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def normalize(vec) -> "ProjectivePoint":
        vec = tuple(Fraction(x) for x in vec)
        if all(x == 0 for x in vec):
            raise ValueError("zero vector is not a projective point")
        first = next(x for x in vec if x != 0)
        return ProjectivePoint(tuple(x / first for x in vec))

    def sort_key(self):
        return self.coords


@dataclass(frozen=True)
class ProjectiveLine:
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def normalize(vec) -> "ProjectiveLine":
        vec = tuple(Fraction(x) for x in vec)
        if all(x == 0 for x in vec):
            raise ValueError("zero vector is not a line")
        first = next(x for x in vec if x != 0)
        return ProjectiveLine(tuple(x / first for x in vec))

    def contains(self, p: ProjectivePoint) -> bool:
        return vec_dot(self.coeffs, p.coords) == 0

    def sort_key(self):
        return self.coeffs


def line_through(p: ProjectivePoint, q: ProjectivePoint) -> ProjectiveLine:
    (a0, a1, a2), (b0, b1, b2) = p.coords, q.coords
    cross = (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    return ProjectiveLine.normalize(cross)


def projective_collinear(points) -> bool:
    return rank([p.coords for p in points]) <= 2


@dataclass(frozen=True)
class HyperprojectionMap:
    """Projection of lift space from a codimension-3 flat onto P^2.

    `forms` are three independent affine functionals (c0, c) vanishing on
    the center; the image of z is [f0(z) : f1(z) : f2(z)].  Points sharing
    an image are exactly those spanning the same one-higher flat with the
    center.
    """

    center: AffineFlat
    forms: tuple

    @staticmethod
    def from_flat(center: AffineFlat) -> "HyperprojectionMap":
        if center.is_empty:
            raise HypothesisViolation("nonempty center", "projection center is empty")
        if center.dim != center.ambient_dim - 3:
            raise HypothesisViolation(
                "center has codimension 3",
                f"dim {center.dim} in Q^{center.ambient_dim}",
            )
        forms = tuple(center.equations())
        if len(forms) != 3:
            raise InvariantViolation(
                "codimension-3 flat without exactly three equations",
                {"dim": center.dim, "ambient": center.ambient_dim},
            )
        return HyperprojectionMap(center, forms)

    def evaluate_forms(self, z) -> tuple:
        return tuple(c0 + vec_dot(c, z) for c0, c in self.forms)

    def project(self, z) -> ProjectivePoint:
        w = self.evaluate_forms(z)
        if all(x == 0 for x in w):
            raise HypothesisViolation(
                "point off the projection center", "z lies on the center flat"
            )
        return ProjectivePoint.normalize(w)

    def pull_back_line(self, line: ProjectiveLine, d: int) -> HyperplaneForm:
        """Hyperplane through the center whose image is the given line."""
        c0 = sum((ci * f[0] for ci, f in zip(line.coeffs, self.forms)), _ZERO)
        cvec = [
            sum((ci * f[1][j] for ci, f in zip(line.coeffs, self.forms)), _ZERO)
            for j in range(self.center.ambient_dim)
        ]
        return HyperplaneForm.from_vector(d, (c0, *cvec))


def hyperproject(pmap: HyperprojectionMap, z) -> ProjectivePoint:
    return pmap.project(z)


def curve_lift_flat(curve: PlaneCurve, d: int) -> AffineFlat:
    """Span of the degree-d lifts of all points of the curve.

    Derived from the equation system of the degree-<=d multiples of the
    curve's radical; exact whenever every component of the zero set is
    infinite, which holds for every curve this pipeline feeds in.
    """
    p = curve.radical
    e = p.degree
    if e > d:
        raise HypothesisViolation("curve degree <= d", f"degree {e} > {d}")
    eqs = []
    for shift_total in range(0, d - e + 1):
        for sn in range(shift_total, -1, -1):
            sm = shift_total - sn
            q = p * BivariatePolynomial.from_dict({(sn, sm): _ONE})
            coeffs = q.as_dict()
            c0 = coeffs.get((0, 0), _ZERO)
            cvec = tuple(coeffs.get(nm, _ZERO) for nm in monomial_order(d))
            eqs.append((c0, cvec))
    return flat_from_equations(ambient_dim(d), eqs)


def exceptional_catalog(A: PointConfiguration | None, B, d: int):
    """Curves of each degree e < d meeting B in C(d+2,2)-C(d-e+2,2)-1 points.

    For a verified basis the section flat of such a curve is a hyperplane
    in degree-e lift space, so candidates are the sections whose vanishing
    space is one-dimensional and realized exactly.
    """
    pts = _resolve_basis_points(A, B)
    verdict = nd_verify(A, pts, d)
    if not verdict.ok:
        raise HypothesisViolation(
            "B satisfies the basis conditions", str(verdict.failures)
        )
    catalog = []
    for e in range(1, d):
        section_size = comb(d + 2, 2) - comb(d - e + 2, 2) - 1
        seen = set()
        found = []
        for idx in combinations(range(len(pts)), section_size):
            section = [pts[i] for i in idx]
            basis_vecs = vanishing_space(section, e)
            if len(basis_vecs) != 1:
                continue
            form = HyperplaneForm.from_vector(e, basis_vecs[0])
            curve = tau_inverse(form)
            incidence = frozenset(i for i, b in enumerate(pts) if curve.contains(b))
            if incidence != frozenset(idx):
                continue
            if curve.representative.degree != e:
                raise InvariantViolation(
                    "exceptional curve with unexpected degree",
                    {"e": e, "curve": curve.representative.text()},
                )
            if curve in seen:
                continue
            seen.add(curve)
            found.append((e, curve))
        if len(found) >= 2 ** (2 ** (d + 2)):
            raise InvariantViolation(
                "exceptional catalog bound exceeded",
                {"e": e, "count": len(found), "bound": 2 ** (2 ** (d + 2))},
            )
        catalog.extend(sorted(found, key=lambda pair: pair[1].sort_key()))
    return tuple(catalog)


@dataclass(frozen=True)
class ProjectionPipelineState:
    config: PointConfiguration
    basis: BasisCandidate
    center: AffineFlat
    projector: HyperprojectionMap
    catalog: tuple
    d_indices: tuple[int, ...]
    e_indices: tuple[int, ...]
    s_points: tuple[ProjectivePoint, ...]
    t_points: tuple[ProjectivePoint, ...]
    fibers: dict
    delta: int
    n: int
    trace: dict

    def to_json_obj(self):
        return dict(self.trace)


def build_pipeline(A: PointConfiguration, B, d: int | None = None) -> ProjectionPipelineState:
    """Classify A relative to the basis B and project the surviving points."""
    d = A.d if d is None else d
    pts = _resolve_basis_points(A, B)
    basis = BasisCandidate(pts, d)
    contained, witness = contained_in_curve(A, d)
    if contained:
        raise HypothesisViolation(
            "configuration not contained in a degree-<=d curve", f"witness {witness}"
        )
    verdict = nd_verify(A, basis, d)
    if not verdict.ok:
        raise HypothesisViolation(
            "B satisfies the basis conditions", str(verdict.failures)
        )
    n_amb = ambient_dim(d)
    center = flat_span([lift(p, d) for p in pts], n_amb)
    if center.dim != n_amb - 3:
        raise InvariantViolation(
            "basis span is not codimension 3",
            {"dim": center.dim, "expected": n_amb - 3},
        )
    projector = HyperprojectionMap.from_flat(center)

    lifts = A.lifts(d)
    d_indices = tuple(i for i in range(len(A)) if center.contains(lifts[i]))
    if any(A.points.index(p) not in d_indices for p in pts if p in A.points):
        raise InvariantViolation("basis point escaped its own span", {})

    catalog = exceptional_catalog(A, basis, d)
    t_points = []
    exceptional = set(d_indices)
    for e, curve in catalog:
        joined = curve_lift_flat(curve, d).extended([lift(p, d) for p in pts])
        if joined.dim != n_amb - 2:
            raise InvariantViolation(
                "exceptional span is not one above the center",
                {"e": e, "curve": curve.representative.text(), "dim": joined.dim},
            )
        # any point of the joined flat off the center projects to the image point
        probe = None
        candidates = [joined.basepoint] + [
            tuple(b + v for b, v in zip(joined.basepoint, dirvec))
            for dirvec in joined.directions
        ]
        for cand in candidates:
            if not center.contains(cand):
                probe = cand
                break
        if probe is None:
            raise InvariantViolation(
                "exceptional flat equals the center", {"curve": curve.representative.text()}
            )
        image = projector.project(probe)
        members = [
            i
            for i in range(len(A))
            if i not in d_indices and joined.contains(lifts[i])
        ]
        for i in members:
            exceptional.add(i)
            if projector.project(lifts[i]) != image:
                raise InvariantViolation(
                    "exceptional curve image is not a single point",
                    {
                        "curve": curve.representative.text(),
                        "point": [str(A.points[i][0]), str(A.points[i][1])],
                    },
                )
        on_curve = [i for i in range(len(A)) if curve.contains(A.points[i])]
        for i in on_curve:
            if i not in d_indices and i not in exceptional:
                raise InvariantViolation(
                    "curve point missing from the exceptional set",
                    {"curve": curve.representative.text(), "index": i},
                )
        t_points.append(image)
    t_points = tuple(sorted(set(t_points), key=ProjectivePoint.sort_key))

    e_indices = tuple(sorted(exceptional))
    fibers: dict[ProjectivePoint, list[int]] = {}
    for i in range(len(A)):
        if i in exceptional:
            continue
        image = projector.project(lifts[i])
        fibers.setdefault(image, []).append(i)
    s_points = tuple(sorted(fibers, key=ProjectivePoint.sort_key))
    delta = max((len(v) for v in fibers.values()), default=0)

    for image in s_points:
        if image in set(t_points):
            raise InvariantViolation(
                "surviving image collides with the forbidden set",
                {"image": [str(c) for c in image.coords]},
            )
    n_threshold = 2 * delta + len(d_indices)
    if delta + len(d_indices) > d * d:
        raise InvariantViolation(
            "fiber bound delta + |D & A| <= d^2 violated",
            {"delta": delta, "D_A": len(d_indices), "d": d},
        )
    trace = {
        "D_A": len(d_indices),
        "E_A": len(e_indices),
        "S": len(s_points),
        "T": len(t_points),
        "delta": delta,
        "n": n_threshold,
        "emitted": None,
    }
    return ProjectionPipelineState(
        config=A,
        basis=basis,
        center=center,
        projector=projector,
        catalog=catalog,
        d_indices=d_indices,
        e_indices=e_indices,
        s_points=s_points,
        t_points=t_points,
        fibers={k: tuple(v) for k, v in fibers.items()},
        delta=delta,
        n=n_threshold,
        trace=trace,
    )


def two_point_lines(S, T):
    """Lines through exactly two points of S and no point of T."""
    S = list(S)
    if len(set(S)) != len(S):
        raise HypothesisViolation("distinct points", "S has repeated points")
    out = []
    seen = set()
    for i, j in combinations(range(len(S)), 2):
        line = line_through(S[i], S[j])
        if line in seen:
            continue
        seen.add(line)
        if sum(1 for p in S if line.contains(p)) != 2:
            continue
        if any(line.contains(t) for t in T):
            continue
        out.append(line)
    return tuple(sorted(out, key=ProjectiveLine.sort_key))


def find_affine_chart(points):
    """Linear form nonzero on every given projective point.

    Sweeps (1, k, k^2); each point excludes at most two k values, so the
    sweep terminates within 2 * #points + 1 tries.
    """
    points = list(points)
    k = 0
    while k <= 2 * len(points) + 1:
        form = (Fraction(1), Fraction(k), Fraction(k * k))
        if all(vec_dot(form, p.coords) != 0 for p in points):
            return form
        k += 1
    raise InvariantViolation(
        "no affine chart found within the guaranteed sweep",
        {"points": len(points)},
    )


def curves_from_basis(A: PointConfiguration, B, d: int | None = None,
                      state: ProjectionPipelineState | None = None):
    """Ordinary curves through B obtained from two-point lines of the image.

    Returns (DeterminedCurveSet, ProjectionPipelineState); the state's trace
    records counts and degeneracy flags.
    """
    if state is None:
        state = build_pipeline(A, B, d)
    d = state.basis.d
    trace = state.trace
    if not state.s_points or projective_collinear(state.s_points):
        trace.update({"emitted": 0, "image_collinear": bool(state.s_points)})
        return DeterminedCurveSet(d, state.n, ()), state

    chart = find_affine_chart(list(state.s_points) + list(state.t_points))
    trace["chart"] = [str(c) for c in chart]

    lines = two_point_lines(state.s_points, state.t_points)
    forms = []
    by_curve: dict[PlaneCurve, list[HyperplaneForm]] = {}
    filtered = 0
    b_indices = frozenset(A.points.index(p) for p in state.basis.points)
    for line in lines:
        hyperplane = state.projector.pull_back_line(line, d)
        forms.append(hyperplane)
        for p in state.basis.points:
            if not hyperplane.contains_point(p):
                raise InvariantViolation(
                    "pulled-back hyperplane misses the basis",
                    {"line": [str(c) for c in line.coeffs]},
                )
        curve = tau_inverse(hyperplane)
        incidence = A.incidence_of(curve)
        if not b_indices <= incidence:
            raise InvariantViolation(
                "emitted curve does not contain the basis",
                {"curve": curve.representative.text()},
            )
        if len(incidence) > state.n:
            filtered += 1
            continue
        by_curve.setdefault(curve, []).append(hyperplane)
    if len({f.sort_key() for f in forms}) != len(lines):
        raise InvariantViolation(
            "line pullback is not injective", {"lines": len(lines)}
        )
    records = []
    for curve in sorted(by_curve, key=PlaneCurve.sort_key):
        hps = tuple(sorted(by_curve[curve], key=HyperplaneForm.sort_key))
        if len(hps) > d**d:
            raise InvariantViolation(
                "per-curve hyperplane fan-in exceeds d^d",
                {"curve": curve.representative.text(), "fan_in": len(hps)},
            )
        records.append(CurveRecord(curve, A.incidence_of(curve), hps))
    trace.update({"emitted": len(records), "lines": len(lines), "filtered": filtered})
    return DeterminedCurveSet(d, state.n, tuple(records)), state
