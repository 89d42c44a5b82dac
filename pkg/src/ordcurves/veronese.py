"""Degree-d Veronese lift and the polynomial/hyperplane dictionary.

The lift of a plane point is the vector of its nonconstant monomial values
x^n y^m, n+m in [1, d], in the global monomial order, living in
Q^(C(d+2,2)-1).  A polynomial class of degree in [1, d] corresponds to the
affine hyperplane with the same coefficients, and membership of a lifted
point in the hyperplane is exactly vanishing of the polynomial at the
source point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .bipoly import BivariatePolynomial, PlaneCurve, X, constant, monomial_order
from .linalg import Vector, vec_dot

Point = tuple[Fraction, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_point(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def ambient_dim(d: int) -> int:
    """Dimension of the lift target space, C(d+2,2) - 1."""
    return comb(d + 2, 2) - 1


def lift(point, d: int) -> Vector:
    """Veronese image (x^n y^m) over the global monomial order."""
    x, y = Fraction(point[0]), Fraction(point[1])
    xp = [_ONE]
    yp = [_ONE]
    for _ in range(d):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
    return tuple(xp[n] * yp[m] for n, m in monomial_order(d))


def homogeneous_lift(point, d: int) -> Vector:
    """(1, lift): the row used for rank and nullspace work on point sets."""
    return (_ONE,) + lift(point, d)


@dataclass(frozen=True)
class HyperplaneForm:
    """Affine hyperplane in lift space: constant + coeffs . z = 0.

    Normalized so the first nonzero entry of (constant,) + coeffs is 1,
    which makes the form a canonical identity for dedup.
    """

    d: int
    constant: Fraction
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_vector(d: int, vec) -> "HyperplaneForm":
        vec = tuple(Fraction(x) for x in vec)
        if len(vec) != ambient_dim(d) + 1:
            raise ValueError("coefficient vector has the wrong length")
        if all(x == 0 for x in vec[1:]):
            raise ValueError("hyperplane form needs a nonzero non-constant coefficient")
        first = next(x for x in vec if x != 0)
        vec = tuple(x / first for x in vec)
        return HyperplaneForm(d, vec[0], vec[1:])

    def augmented(self) -> Vector:
        return (self.constant,) + self.coeffs

    def contains_lifted(self, z: Vector) -> bool:
        return self.constant + vec_dot(self.coeffs, z) == 0

    def contains_point(self, point) -> bool:
        return self.contains_lifted(lift(point, self.d))

    def sort_key(self):
        return self.augmented()


def tau(p: BivariatePolynomial, d: int) -> HyperplaneForm:
    """Hyperplane of the class [p]; requires 1 <= deg p <= d."""
    if p.is_zero or p.is_constant:
        raise ValueError("tau requires a nonconstant polynomial")
    if p.degree > d:
        raise ValueError(f"degree {p.degree} exceeds d={d}")
    coeffs = p.as_dict()
    vec = [coeffs.get((0, 0), _ZERO)] + [coeffs.get(nm, _ZERO) for nm in monomial_order(d)]
    return HyperplaneForm.from_vector(d, vec)


def tau_inverse(h: HyperplaneForm, d: int | None = None) -> PlaneCurve:
    """Curve whose polynomial is read off the hyperplane coefficients."""
    if d is not None and d != h.d:
        raise ValueError("degree mismatch between form and request")
    coeffs = {(0, 0): h.constant}
    for nm, c in zip(monomial_order(h.d), h.coeffs):
        coeffs[nm] = c
    p = BivariatePolynomial.from_dict(coeffs)
    if p.is_constant:
        raise ValueError("hyperplane has no non-constant coefficient; no curve")
    return PlaneCurve.from_poly(p)


def pad_degree(p: BivariatePolynomial, d: int, avoid) -> BivariatePolynomial:
    """Raise deg p to exactly d by vertical-line factors missing `avoid`.

    The returned q = p * (x - c)^(d - deg p) satisfies Z(q) & avoid =
    Z(p) & avoid; c is the first integer >= 0 that is no avoid point's
    x-coordinate.
    """
    if p.is_zero or p.is_constant:
        raise ValueError("pad_degree requires a nonconstant polynomial")
    if p.degree > d:
        raise ValueError(f"degree {p.degree} exceeds d={d}")
    if p.degree == d:
        return p
    taken = {Fraction(a[0]) for a in avoid}
    c = 0
    while Fraction(c) in taken:
        c += 1
    line = X - constant(c)
    return (p * line.pow(d - p.degree)).canonical()
