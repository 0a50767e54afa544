"""Series in a deformation parameter t with polynomial coefficients.

A TGraded value represents sum_j coeffs[j] * t^j, known through t-powers
strictly below t_order; higher powers are unknown, not zero.  Every
operation tracks the window honestly: a product is only trusted through
the smaller of the two windows, differentiation in t shrinks the window
by one.

z_trunc, when set, records that each coefficient has been truncated to
that total z-degree.  None means coefficients are exact polynomials.
Operations propagate the tighter of the two caps.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .gaussrat import GaussianRational, ScalarLike
from .poly import Poly, exp_truncated


def _min_cap(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TGraded:
    __slots__ = ("arity", "t_order", "coeffs", "z_trunc")

    def __init__(
        self,
        arity: int,
        coeffs: Sequence[Poly],
        t_order: Optional[int] = None,
        z_trunc: Optional[int] = None,
    ):
        if t_order is None:
            t_order = len(coeffs)
        if t_order < 0:
            raise ValueError("t_order must be nonnegative")
        if len(coeffs) > t_order:
            raise ValueError(f"{len(coeffs)} coefficients exceed t_order {t_order}")
        slots = list(coeffs)
        for p in slots:
            if not isinstance(p, Poly) or p.arity != arity:
                raise ValueError("every coefficient must be a Poly of the stated arity")
        while len(slots) < t_order:
            slots.append(Poly.zero(arity))
        if z_trunc is not None:
            slots = [p.truncate(z_trunc) for p in slots]
        self.arity = arity
        self.t_order = t_order
        self.coeffs = slots
        self.z_trunc = z_trunc

    @classmethod
    def zero(cls, arity: int, t_order: int, z_trunc: Optional[int] = None) -> "TGraded":
        return cls(arity, [], t_order, z_trunc)

    @classmethod
    def from_poly(cls, p: Poly, t_order: int, z_trunc: Optional[int] = None) -> "TGraded":
        """Embed a z-polynomial as a series constant in t."""
        return cls(p.arity, [p], t_order, z_trunc)

    # -- access ---------------------------------------------------------

    def coeff(self, j: int) -> Poly:
        """Coefficient of t^j (must lie inside the known window)."""
        if j < 0 or j >= self.t_order:
            raise IndexError(f"t-power {j} outside window [0, {self.t_order})")
        return self.coeffs[j]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _join(self, other: "TGraded") -> tuple:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
        return min(self.t_order, other.t_order), _min_cap(self.z_trunc, other.z_trunc)

    def __add__(self, other: "TGraded") -> "TGraded":
        t, z = self._join(other)
        slots = [self.coeffs[j] + other.coeffs[j] for j in range(t)]
        return TGraded(self.arity, slots, t, z)

    def __sub__(self, other: "TGraded") -> "TGraded":
        t, z = self._join(other)
        slots = [self.coeffs[j] - other.coeffs[j] for j in range(t)]
        return TGraded(self.arity, slots, t, z)

    def __neg__(self) -> "TGraded":
        return TGraded(self.arity, [-p for p in self.coeffs], self.t_order, self.z_trunc)

    def scale(self, value: ScalarLike) -> "TGraded":
        c = GaussianRational.coerce(value)
        return TGraded(self.arity, [p.scale(c) for p in self.coeffs], self.t_order, self.z_trunc)

    def scale_poly(self, p: Poly) -> "TGraded":
        slots = [c * p for c in self.coeffs]
        return TGraded(self.arity, slots, self.t_order, self.z_trunc)

    def __mul__(self, other: "TGraded") -> "TGraded":
        t, z = self._join(other)
        slots = [Poly.zero(self.arity) for _ in range(t)]
        for a in range(min(len(self.coeffs), t)):
            pa = self.coeffs[a]
            if pa.is_zero():
                continue
            for b in range(min(len(other.coeffs), t - a)):
                pb = other.coeffs[b]
                if pb.is_zero():
                    continue
                slots[a + b] = slots[a + b] + pa * pb
        return TGraded(self.arity, slots, t, z)

    def __pow__(self, exponent: int) -> "TGraded":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series exponent must be a nonnegative integer")
        result = TGraded.from_poly(Poly.one(self.arity), self.t_order, self.z_trunc)
        for _ in range(exponent):
            result = result * self
        return result

    # -- calculus in t ------------------------------------------------------

    def dt(self) -> "TGraded":
        """Derivative in t; the window shrinks by one."""
        if self.t_order == 0:
            raise ValueError("cannot differentiate an empty window")
        slots = [self.coeffs[j + 1].scale(j + 1) for j in range(self.t_order - 1)]
        return TGraded(self.arity, slots, self.t_order - 1, self.z_trunc)

    def shift_t(self, k: int = 1) -> "TGraded":
        """Multiply by t^k; the window widens by k."""
        if k < 0:
            raise ValueError("shift power must be nonnegative")
        slots = [Poly.zero(self.arity)] * k + self.coeffs
        return TGraded(self.arity, slots, self.t_order + k, self.z_trunc)

    # -- window management ----------------------------------------------------

    def truncate_t(self, t_order: int) -> "TGraded":
        if t_order > self.t_order:
            raise ValueError("cannot widen a truncated window")
        return TGraded(self.arity, self.coeffs[:t_order], t_order, self.z_trunc)

    def truncate_z(self, max_degree: int) -> "TGraded":
        cap = _min_cap(self.z_trunc, max_degree)
        return TGraded(self.arity, [p.truncate(cap) for p in self.coeffs], self.t_order, cap)

    def map_coeffs(self, fn: Callable[[Poly], Poly], z_drop: int = 0) -> "TGraded":
        """Apply a z-operation to every coefficient.

        z_drop states how many degrees of trust the operation costs on
        truncated coefficients (2 per Laplacian, 1 per first derivative,
        0 for degree-preserving maps).
        """
        cap = None if self.z_trunc is None else max(self.z_trunc - z_drop, 0)
        slots = [fn(p) for p in self.coeffs]
        if cap is not None:
            slots = [p.truncate(cap) for p in slots]
        return TGraded(self.arity, slots, self.t_order, cap)

    # -- comparison and display --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TGraded):
            return NotImplemented
        if self.arity != other.arity:
            return False
        n = max(len(self.coeffs), len(other.coeffs))
        zero = Poly.zero(self.arity)
        for j in range(n):
            a = self.coeffs[j] if j < len(self.coeffs) else zero
            b = other.coeffs[j] if j < len(other.coeffs) else zero
            if a != b:
                return False
        return True

    __hash__ = None

    def __str__(self) -> str:
        parts = []
        for j, p in enumerate(self.coeffs):
            if p.is_zero():
                continue
            head = "" if j == 0 else ("t*" if j == 1 else f"t^{j}*")
            parts.append(f"{head}({p})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"TGraded(t_order={self.t_order}, z_trunc={self.z_trunc}, {self})"


def compose_poly(
    p: Poly,
    values: Sequence[TGraded],
    t_order: int,
    z_trunc: Optional[int] = None,
) -> TGraded:
    """Substitute one series per variable of p, truncating as stated."""
    if len(values) != p.arity:
        raise ValueError(f"need {p.arity} series, got {len(values)}")
    if not values:
        return TGraded.from_poly(p, t_order, z_trunc)
    arity = values[0].arity
    one = TGraded.from_poly(Poly.one(arity), t_order, z_trunc)
    vals = [v.truncate_t(min(v.t_order, t_order)) for v in values]
    powers: list = [{0: one} for _ in range(p.arity)]
    total = TGraded.zero(arity, t_order, z_trunc)
    for mono, coeff in p.terms.items():
        prod = one.scale(coeff)
        for j, e in enumerate(mono):
            if not e:
                continue
            cache = powers[j]
            if e not in cache:
                cache[e] = vals[j] ** e
            prod = prod * cache[e]
        total = total + prod
    return total


def exp_tgraded(a: TGraded, z_trunc: Optional[int] = None) -> TGraded:
    """exp of a series, slot by slot: exp(A_0) * exp(A - A_0).

    The t-constant slot A_0 exponentiates to an infinite z-series, so a
    z-degree cap is required whenever A_0 is nonzero.  The remainder has
    positive t-valuation and exponentiates exactly within the window.
    """
    cap = _min_cap(a.z_trunc, z_trunc)
    head = a.coeffs[0] if a.coeffs else Poly.zero(a.arity)
    if not head.is_zero():
        if cap is None:
            raise ValueError("exp of a series with nonzero t-constant slot needs a z-degree cap")
        e0 = exp_truncated(head, 1, cap)
    else:
        e0 = Poly.one(a.arity)
    tail = TGraded(a.arity, [Poly.zero(a.arity)] + list(a.coeffs[1:]), a.t_order, cap)
    term = TGraded.from_poly(Poly.one(a.arity), a.t_order, cap)
    total = term
    for k in range(1, a.t_order):
        term = term * tail
        total = total + term.scale(Fraction(1, math.factorial(k)))
    return total.scale_poly(e0)
