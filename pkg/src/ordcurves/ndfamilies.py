"""Bases in curve-general position: membership verifier and chain grower.

A basis candidate is a subset B of A with C(d+2,2)-3 points.  Membership in
the good family asks four things of B: affinely independent degree-d lifts,
no degree-e curve (1 <= e < d) meeting B in C(d+2,2)-C(d-e+2,2) or more
points, and a dimension dichotomy on the complement of every maximal curve
section.  Sections of B by exact-degree-e curves coincide with sections by
curves of degree at most e (pad with a far-away line), and a subset S is
such a section exactly when its vanishing space at degree e has a
nonconstant element whose dimension strictly drops when any point of B\\S
is adjoined; over an infinite field that guarantees a curve through S
avoiding the rest of B.

The chain grower extends a seed set one point at a time, always picking the
first candidate outside the union of forbidden pullback regions attached to
the current set; on success the result provably satisfies the four
conditions, and this implementation re-verifies and treats a mismatch as an
internal defect.  Whether a carrier curve sits inside a forbidden region is
decided exactly by sampling 2d^2+1 of its points: a region is covered by
three curves of degree at most d, so a carrier not inside it meets it in at
most 2d^2 points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .bipoly import PlaneCurve, rational_points_on_curve
from .determined import PointConfiguration, contained_in_curve, vanishing_dim
from .errors import HypothesisViolation, InvariantViolation
from .linalg import AffineFlat, affine_rank, flat_span
from .veronese import ambient_dim, as_point, lift


@dataclass(frozen=True)
class BasisCandidate:
    points: tuple
    d: int

    def __post_init__(self):
        expected = comb(self.d + 2, 2) - 3
        if len(set(self.points)) != len(self.points):
            raise HypothesisViolation("distinct basis points", "duplicate point in B")
        if len(self.points) != expected:
            raise HypothesisViolation(
                "|B| = C(d+2,2)-3",
                f"got {len(self.points)}, expected {expected} at d={self.d}",
            )


@dataclass(frozen=True)
class NdQuantities:
    d: int
    e: int
    v_e: AffineFlat
    w_e: AffineFlat
    alpha: int
    beta: int
    gamma: int
    mu: int
    tau: int


def nd_quantities(B, D, e: int, d: int) -> NdQuantities:
    """The seven section quantities for D inside B at split degree e."""
    if not 1 <= e <= d - 1:
        raise HypothesisViolation("1 <= e <= d-1", f"e={e}, d={d}")
    B = [as_point(b) for b in B]
    D = [as_point(p) for p in D]
    if any(p not in B for p in D):
        raise HypothesisViolation("D subset of B", "D contains a point outside B")
    v_e = flat_span([lift(p, e) for p in D], ambient_dim(e))
    alpha = comb(e + 2, 2) - 2 - v_e.dim
    in_v = [b for b in B if not v_e.is_empty and v_e.contains(lift(b, e))]
    rest = [b for b in B if b not in in_v]
    w_e = flat_span([lift(b, d - e) for b in rest], ambient_dim(d - e))
    beta = comb(d - e + 2, 2) - 3 - w_e.dim
    gamma = len(in_v)
    mu = 0 if alpha < 0 else alpha + gamma + comb(d - e + 2, 2)
    section_cut = comb(d + 2, 2) - comb(d - e + 2, 2) - 1
    if min(alpha, beta) < 0 or gamma > section_cut:
        tau = 0
    elif gamma == section_cut:
        tau = alpha + beta + len(B) + 2
    else:
        tau = alpha + beta + len(B) + 3
    return NdQuantities(d, e, v_e, w_e, alpha, beta, gamma, mu, tau)


@dataclass(frozen=True)
class ForbiddenRegion:
    """Point membership in U_e(B, D): up to three lift-flat pullbacks."""

    quantities: NdQuantities
    v_d_b: AffineFlat

    def contains_point(self, pt) -> bool:
        q = self.quantities
        pt = as_point(pt)
        if not self.v_d_b.is_empty and self.v_d_b.contains(lift(pt, q.d)):
            return True
        if q.alpha >= 0 and not q.v_e.is_empty and q.v_e.contains(lift(pt, q.e)):
            return True
        if (
            q.alpha >= 0
            and q.beta >= 0
            and not q.w_e.is_empty
            and q.w_e.contains(lift(pt, q.d - q.e))
        ):
            return True
        return False


def forbidden_region(B, D, e: int, d: int) -> ForbiddenRegion:
    B = [as_point(b) for b in B]
    v_d_b = flat_span([lift(b, d) for b in B], ambient_dim(d))
    return ForbiddenRegion(nd_quantities(B, D, e, d), v_d_b)


def forbidden_region_membership(B, D, e: int, d: int, pt) -> bool:
    return forbidden_region(B, D, e, d).contains_point(pt)


def realizable_sections(B, e: int):
    """Subsets S of B occurring as C & B for a curve C of degree exactly e.

    Yields index tuples into B in decreasing size; the decision is the
    vanishing-space drop test described in the module docstring.
    """
    B = [as_point(b) for b in B]
    dims: dict[frozenset, int] = {}

    def vdim(idx_set: frozenset) -> int:
        if idx_set not in dims:
            dims[idx_set] = vanishing_dim([B[i] for i in idx_set], e)
        return dims[idx_set]

    n = len(B)
    for size in range(n, -1, -1):
        for idx in combinations(range(n), size):
            s = frozenset(idx)
            dim_s = vdim(s)
            if dim_s == 0:
                continue
            if all(vdim(s | {j}) < dim_s for j in range(n) if j not in s):
                yield idx


@dataclass(frozen=True)
class NdVerifyResult:
    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def _resolve_basis_points(A: PointConfiguration | None, B):
    if isinstance(B, BasisCandidate):
        return tuple(B.points)
    B = list(B)
    if A is not None and B and all(isinstance(b, int) for b in B):
        return A.subset(B)
    return tuple(as_point(b) for b in B)


def nd_verify(A: PointConfiguration | None, B, d: int | None = None) -> NdVerifyResult:
    """Check the four basis conditions; early exit on the first failure.

    B may be a BasisCandidate, a point list, or an index list into A.
    """
    pts = _resolve_basis_points(A, B)
    if d is None:
        d = B.d if isinstance(B, BasisCandidate) else (A.d if A is not None else None)
    if d is None or d < 2:
        raise HypothesisViolation("d >= 2", f"d={d}")
    BasisCandidate(pts, d)  # validates size and distinctness
    if A is not None:
        missing = [p for p in pts if p not in A.points]
        if missing:
            raise HypothesisViolation("B subset of A", f"{missing[0]} not in A")

    target_dim = comb(d + 2, 2) - 4
    dim_b = affine_rank([lift(p, d) for p in pts]) - 1
    if dim_b != target_dim:
        return NdVerifyResult(
            False,
            (
                {
                    "condition": "i",
                    "e": d,
                    "section": sorted(range(len(pts))),
                    "measured": dim_b,
                    "threshold": target_dim,
                },
            ),
        )

    for e in range(1, d):
        cut = comb(d + 2, 2) - comb(d - e + 2, 2)
        rest_target = comb(d - e + 2, 2) - 3
        for idx in realizable_sections(pts, e):
            size = len(idx)
            if size >= cut:
                return NdVerifyResult(
                    False,
                    (
                        {
                            "condition": "ii",
                            "e": e,
                            "section": list(idx),
                            "measured": size,
                            "threshold": cut,
                        },
                    ),
                )
            rest = [pts[i] for i in range(len(pts)) if i not in idx]
            dim_rest = affine_rank([lift(p, d - e) for p in rest]) - 1
            if size == cut - 1 and dim_rest != rest_target:
                return NdVerifyResult(
                    False,
                    (
                        {
                            "condition": "iii",
                            "e": e,
                            "section": list(idx),
                            "measured": dim_rest,
                            "threshold": rest_target,
                        },
                    ),
                )
            if size < cut - 1 and dim_rest <= rest_target:
                return NdVerifyResult(
                    False,
                    (
                        {
                            "condition": "iv",
                            "e": e,
                            "section": list(idx),
                            "measured": dim_rest,
                            "threshold": rest_target,
                        },
                    ),
                )
    return NdVerifyResult(True, ())


GUARD_NAME = "growth guard max(tau, mu) < C(d+2,2)"


def _carrier_sample(c0: PlaneCurve, d: int):
    return [as_point(p) for p in rational_points_on_curve(c0, 2 * d * d + 1)]


def _active_pairs(B_pts, d: int, carrier_sample):
    """I(B, C0): (e, D, region) triples where C0 is not inside the region.

    With no carrier (C0 = the whole plane), every pair is active because a
    region is covered by at most three curves.
    """
    B_pts = list(B_pts)
    v_d_b = flat_span([lift(b, d) for b in B_pts], ambient_dim(d))
    out = []
    for e in range(1, d):
        for size in range(len(B_pts) + 1):
            for idx in combinations(range(len(B_pts)), size):
                D = [B_pts[i] for i in idx]
                region = ForbiddenRegion(nd_quantities(B_pts, D, e, d), v_d_b)
                if carrier_sample is not None and all(
                    region.contains_point(p) for p in carrier_sample
                ):
                    continue
                out.append((e, idx, region))
    return out


def _assert_guard(pairs, B_pts, d: int, step: int) -> int:
    """Check the growth guard and return the step's max(tau, mu).

    The strict bound max(tau, mu) < C(d+2,2) holds at every step for d >= 3
    and for completed sets at d = 2.  At d = 2 a growing set of fewer than
    C(d+2,2)-3 points always carries small sections whose quantities reach
    the bound with equality (alpha + beta is data-independent there), so the
    enforced bound during d = 2 growth is non-strict.
    """
    bound = comb(d + 2, 2)
    completed = len(B_pts) >= comb(d + 2, 2) - 3
    strict = d >= 3 or completed
    worst = 0
    for e, idx, region in pairs:
        q = region.quantities
        value = max(q.tau, q.mu)
        worst = max(worst, value)
        if value > bound or (strict and value == bound):
            raise InvariantViolation(
                GUARD_NAME,
                {
                    "step": step,
                    "d": d,
                    "e": e,
                    "B": [[str(x), str(y)] for x, y in B_pts],
                    "D": list(idx),
                    "tau": q.tau,
                    "mu": q.mu,
                    "bound": bound,
                    "strict": strict,
                },
            )
    return worst


@dataclass(frozen=True)
class GrowthResult:
    success: bool
    basis: BasisCandidate | None
    chain: tuple[int, ...]
    blocked: tuple
    guard_trace: tuple[int, ...] = ()

    def to_json_obj(self):
        return {
            "success": self.success,
            "chain": list(self.chain),
            "blocked": list(self.blocked),
            "guard_trace": list(self.guard_trace),
        }


def grow_nd_chain(
    A: PointConfiguration,
    b0_indices,
    c0: PlaneCurve | None,
    d: int,
    order=None,
    seed: int | None = None,
) -> GrowthResult:
    """Greedy basis construction by forbidden-region avoidance.

    Without a carrier, grows from the empty set over all of A; with an
    irreducible carrier C0 of degree d-f, grows a seed B0 of C(f+2,2) points
    off C0 (not on any curve of degree <= f) using candidates on C0 only.
    Candidate order is an explicit index sequence or a seeded shuffle, so
    failures reproduce exactly.
    """
    if d < 2:
        raise HypothesisViolation("d >= 2", f"d={d}")
    b0_indices = [int(i) for i in b0_indices]
    target = comb(d + 2, 2) - 3
    if len(A) < target:
        return GrowthResult(
            False, None, tuple(b0_indices),
            ({"step": 0, "reason": f"|A|={len(A)} below target {target}"},),
        )

    if c0 is None:
        if b0_indices:
            raise HypothesisViolation(
                "empty seed without carrier", "B0 must be empty when C0 is absent"
            )
        pool = list(range(len(A)))
        carrier_sample = None
    else:
        f = d - c0.radical.degree
        if not 0 <= f <= d - 1:
            raise HypothesisViolation(
                "carrier degree in [1, d]", f"deg C0 = {c0.radical.degree}, d = {d}"
            )
        if len(b0_indices) != comb(f + 2, 2):
            raise HypothesisViolation(
                "|B0| = C(f+2,2)",
                f"got {len(b0_indices)}, expected {comb(f + 2, 2)} at f={f}",
            )
        b0_pts = A.subset(b0_indices)
        if any(c0.contains(p) for p in b0_pts):
            raise HypothesisViolation("B0 disjoint from carrier", "seed point on C0")
        if f >= 1 and vanishing_dim(b0_pts, f) > 0:
            raise HypothesisViolation(
                "B0 not contained in a curve of degree <= f",
                f"seed lies on a degree-<= {f} curve",
            )
        pool = [
            i
            for i in range(len(A))
            if i not in b0_indices and c0.contains(A.points[i])
        ]
        carrier_sample = _carrier_sample(c0, d)

    if order is not None:
        order = [int(i) for i in order]
        ordered_pool = [i for i in order if i in set(pool)]
    else:
        rng = random.Random(seed)
        ordered_pool = list(pool)
        rng.shuffle(ordered_pool)

    chain = list(b0_indices)
    blocked = []
    guard_trace = []
    pairs = _active_pairs(A.subset(chain), d, carrier_sample)
    guard_trace.append(_assert_guard(pairs, A.subset(chain), d, step=0))
    step = 0
    while len(chain) < target:
        step += 1
        chosen = None
        rejected = []
        for i in ordered_pool:
            if i in chain:
                continue
            pt = A.points[i]
            if any(region.contains_point(pt) for _, _, region in pairs):
                rejected.append(i)
                continue
            chosen = i
            break
        if chosen is None:
            blocked.append(
                {"step": step, "have": len(chain), "rejected": rejected,
                 "reason": "candidate pool exhausted inside forbidden regions"}
            )
            return GrowthResult(False, None, tuple(chain), tuple(blocked), tuple(guard_trace))
        chain.append(chosen)
        pairs = _active_pairs(A.subset(chain), d, carrier_sample)
        guard_trace.append(_assert_guard(pairs, A.subset(chain), d, step=step))

    basis = BasisCandidate(A.subset(chain), d)
    verdict = nd_verify(A, basis, d)
    if not verdict.ok:
        raise InvariantViolation(
            "grown chain fails the basis conditions",
            {"chain": chain, "failures": list(verdict.failures)},
        )
    return GrowthResult(True, basis, tuple(chain), tuple(blocked), tuple(guard_trace))


def count_spanning_subsets(A: PointConfiguration, e: int) -> int:
    """Subsets of size C(e+2,2) not contained in any curve of degree <= e."""
    if e == 0:
        return len(A)
    if e < 0:
        raise HypothesisViolation("e >= 0", f"e={e}")
    contained, witness = contained_in_curve(A, e)
    if contained:
        raise HypothesisViolation(
            "A not contained in a degree-<=e curve", f"witness {witness}"
        )
    size = comb(e + 2, 2)
    count = sum(
        1
        for idx in combinations(range(len(A)), size)
        if vanishing_dim(A.subset(idx), e) == 0
    )
    if count * 2 ** (size - 1) < len(A):
        raise InvariantViolation(
            "spanning-subset count below |A| / 2^(C(e+2,2)-1)",
            {"e": e, "count": count, "n_points": len(A)},
        )
    return count
