"""Generators for extremal and random point configurations.

Two construction families make the upper bounds of the enumeration tight: a
line loaded with most of the points plus a small general-position block off
it, and a carrier curve holding all but one point with the lifted points in
general position inside the carrier's hyperplane.  Both are built greedily
with exact certificates; random samplers reject candidates violating the
requested lifted general position.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .bipoly import PlaneCurve, parse_poly
from .determined import PointConfiguration, contained_in_curve
from .errors import HypothesisViolation, InvariantViolation
from .linalg import affine_rank
from .veronese import lift, tau


@dataclass(frozen=True)
class Construction:
    config: PointConfiguration
    provenance: dict

    def to_json_obj(self):
        return {
            "d": self.config.d,
            "points": [[str(x), str(y)] for x, y in self.config.points],
            "provenance": self.provenance,
        }


def _rand_point(rng: random.Random, span: int, den_choices=(1,)):
    den = rng.choice(den_choices)
    return (
        Fraction(rng.randint(-span, span), den),
        Fraction(rng.randint(-span, span), den),
    )


def construct_theorem6(d: int, m: int, seed: int = 0) -> Construction:
    """Line-heavy extremal set: C(d+1,2) block points plus m - C(d+1,2) on a line.

    The block is resampled until certified off every curve of degree d-1,
    which forces the whole set off every curve of degree d.
    """
    if d <= 1:
        raise HypothesisViolation("d > 1", f"d={d}")
    if 2 * m <= max(3 * d * d - 3 * d + 4, d * d + 4 * d):
        raise HypothesisViolation(
            "m > max((3d^2-3d+4)/2, (d^2+4d)/2)",
            f"m={m} fails the bound at d={d}",
        )
    rng = random.Random(seed)
    block_size = comb(d + 1, 2)
    span = 4 * (m + d)
    block: list = []
    for _ in range(4000):
        cand = _rand_point(rng, span)
        if cand[1] == 0 or cand in block:
            continue
        block.append(cand)
        if len(block) < block_size:
            continue
        probe = PointConfiguration.from_points(block, max(d - 1, 1))
        if d - 1 >= 1 and contained_in_curve(probe, d - 1)[0]:
            block.pop(rng.randrange(len(block)))
            continue
        break
    else:
        raise HypothesisViolation(
            "block sampling budget", "could not certify a general-position block"
        )
    xs = rng.sample(range(-span, span + 1), m - block_size)
    line_pts = [(Fraction(x), Fraction(0)) for x in sorted(xs)]
    pts = block + line_pts
    config = PointConfiguration.from_points(pts, d)
    contained, witness = contained_in_curve(config, d)
    if contained:
        raise InvariantViolation(
            "line-plus-block set lies on a low-degree curve",
            {"witness": witness.representative.text(), "d": d, "m": m},
        )
    return Construction(
        config,
        {
            "kind": "theorem6",
            "d": d,
            "m": m,
            "seed": seed,
            "line": "y",
            "block_indices": list(range(block_size)),
            "line_indices": list(range(block_size, m)),
            "certificates": {"block_off_lower_degree": True, "not_on_degree_d": True},
        },
    )


def default_carrier(d: int) -> PlaneCurve:
    return PlaneCurve.from_poly(parse_poly(f"y - x^{d}") if d > 1 else parse_poly("y - x"))


def construct_theorem8(
    d: int, n: int, m: int, seed: int = 0, carrier: PlaneCurve | None = None
) -> Construction:
    """Carrier-heavy set: m-1 points on an irreducible degree-d curve plus one off.

    Carrier points are chosen greedily so every lifted subset of size up to
    C(d+2,2)-1 stays affinely independent; each step's obstruction flats are
    finite and each excludes at most d^2 carrier parameters, bounding the
    sweep.
    """
    N = comb(d + 2, 2) - 1
    if n < N:
        raise HypothesisViolation("n >= C(d+2,2)-1", f"n={n} < {N}")
    if m <= 2 * n + 1 - (N + 1):
        raise HypothesisViolation(
            "m > 2n+1-C(d+2,2)", f"m={m} at n={n}, d={d}"
        )
    carrier = default_carrier(d) if carrier is None else carrier
    if carrier.representative.degree != d:
        raise HypothesisViolation(
            "carrier of degree d", f"degree {carrier.representative.degree} != {d}"
        )
    rng = random.Random(seed)

    def carrier_point(t: Fraction):
        # carriers here are graphs y = x^d; solve exactly via the radical
        p = carrier.radical
        return (t, t**d) if p.evaluate((t, t**d)) == 0 else None

    window = list(range(-3 * m - 4, 3 * m + 5))
    rng.shuffle(window)
    chosen: list = []
    chosen_lifts: list = []
    pos = 0
    for step in range(m - 1):
        r = min(len(chosen), N - 1)
        obstructions = list(combinations(range(len(chosen)), r)) if chosen else []
        budget = d * d * max(1, len(obstructions)) + len(chosen) + 2
        tried = 0
        placed = False
        while tried <= budget:
            if pos >= len(window):
                extension = list(
                    range(len(window) // 2 + 1, len(window) // 2 + budget + 2)
                )
                rng.shuffle(extension)
                window.extend(extension)
            t = Fraction(window[pos])
            pos += 1
            pt = carrier_point(t)
            if pt is None or pt in chosen:
                continue
            tried += 1
            z = lift(pt, d)
            bad = False
            for idx in obstructions:
                rows = [chosen_lifts[i] for i in idx]
                if affine_rank(rows + [z]) == len(rows):
                    bad = True
                    break
            if bad:
                continue
            chosen.append(pt)
            chosen_lifts.append(z)
            placed = True
            break
        if not placed:
            raise InvariantViolation(
                "carrier sweep exhausted beyond the counting budget",
                {"step": step, "budget": budget, "d": d, "m": m},
            )
    off = None
    for c in range(1, 100):
        cand = (Fraction(0), Fraction(c))
        if not carrier.contains(cand):
            off = cand
            break
    if off is None:
        raise InvariantViolation("no off-carrier point on the vertical axis", {})
    pts = [off] + chosen
    config = PointConfiguration.from_points(pts, d)
    contained, witness = contained_in_curve(config, d)
    if contained:
        raise InvariantViolation(
            "carrier construction lies on a low-degree curve",
            {"witness": witness.representative.text()},
        )
    return Construction(
        config,
        {
            "kind": "theorem8",
            "d": d,
            "n": n,
            "m": m,
            "seed": seed,
            "carrier": carrier.representative.text(),
            "off_index": 0,
            "carrier_indices": list(range(1, m)),
            "certificates": {"lifted_general_position_in_hyperplane": True},
        },
    )


def carrier_hyperplane(carrier: PlaneCurve, d: int):
    """Hyperplane of the carrier class in degree-d lift space."""
    return tau(carrier.representative, d)


def _passes_genericity(points, lifts_by_e, cand, g: int) -> bool:
    for e in range(1, g + 1):
        z = lift(cand, e)
        size = min(len(points), comb(e + 2, 2) - 1)
        for idx in combinations(range(len(points)), size):
            rows = [lifts_by_e[e][i] for i in idx]
            if affine_rank(rows + [z]) == len(rows):
                return False
    return True


def sample_configuration(kind: str, seed: int = 0, **params) -> Construction:
    """Deterministic configuration samplers.

    kind 'grid': integer grid, params width/height (or side), d.
    kind 'random_general': params count, d, genericity (max degree whose
    lifted subsets of every admissible size must stay affinely independent;
    0 disables), span (coordinate bound).
    """
    if kind == "grid":
        d = int(params.get("d", 1))
        side = params.get("side")
        width = int(params.get("width", side or 3))
        height = int(params.get("height", side or 3))
        pts = [(Fraction(x), Fraction(y)) for y in range(height) for x in range(width)]
        return Construction(
            PointConfiguration.from_points(pts, d),
            {"kind": "grid", "width": width, "height": height, "d": d, "seed": seed},
        )
    if kind != "random_general":
        raise HypothesisViolation("known sampler kind", f"kind={kind}")
    count = int(params["count"])
    d = int(params.get("d", 1))
    g = int(params.get("genericity", d))
    span = int(params.get("span", 6 * count + 8))
    rng = random.Random(seed)
    pts: list = []
    lifts_by_e = {e: [] for e in range(1, g + 1)}
    budget = 600 * count + 200
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > budget:
            raise HypothesisViolation(
                "rejection budget", f"could not place {count} points at genericity {g}"
            )
        cand = _rand_point(rng, span)
        if cand in pts:
            continue
        if g >= 1 and not _passes_genericity(pts, lifts_by_e, cand, g):
            continue
        pts.append(cand)
        for e in range(1, g + 1):
            lifts_by_e[e].append(lift(cand, e))
    return Construction(
        PointConfiguration.from_points(pts, d),
        {
            "kind": "random_general",
            "count": count,
            "d": d,
            "genericity": g,
            "span": span,
            "seed": seed,
            "certificates": {"lifted_general_position_degree": g},
        },
    )
