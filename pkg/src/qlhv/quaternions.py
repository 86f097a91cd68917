"""Exact arithmetic in the 8-element unit-quaternion group, plus phase helpers.

The group {±1, ±i, ±j, ±k} is represented exactly (no floating point) so
that identities proved over it hold with no tolerance.  A small floating
``Quaternion`` type embeds the same algebra over real coefficients for the
direction-vector mapping.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import IntEnum
from functools import reduce
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi


class Basis(IntEnum):
    ONE = 0
    I = 1
    J = 2
    K = 3


_SYMBOL = {Basis.ONE: "1", Basis.I: "i", Basis.J: "j", Basis.K: "k"}

# Hamilton relations: i^2 = j^2 = k^2 = ijk = -1.
# (a, b) -> (basis of a*b, sign factor)
_MUL_TABLE = {
    (Basis.ONE, Basis.ONE): (Basis.ONE, 1),
    (Basis.ONE, Basis.I): (Basis.I, 1),
    (Basis.ONE, Basis.J): (Basis.J, 1),
    (Basis.ONE, Basis.K): (Basis.K, 1),
    (Basis.I, Basis.ONE): (Basis.I, 1),
    (Basis.J, Basis.ONE): (Basis.J, 1),
    (Basis.K, Basis.ONE): (Basis.K, 1),
    (Basis.I, Basis.I): (Basis.ONE, -1),
    (Basis.J, Basis.J): (Basis.ONE, -1),
    (Basis.K, Basis.K): (Basis.ONE, -1),
    (Basis.I, Basis.J): (Basis.K, 1),
    (Basis.J, Basis.K): (Basis.I, 1),
    (Basis.K, Basis.I): (Basis.J, 1),
    (Basis.J, Basis.I): (Basis.K, -1),
    (Basis.K, Basis.J): (Basis.I, -1),
    (Basis.I, Basis.K): (Basis.J, -1),
}


@dataclass(frozen=True, order=True)
class Q8Element:
    """One of the eight unit quaternions ±1, ±i, ±j, ±k."""

    basis: Basis
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def __neg__(self) -> "Q8Element":
        return Q8Element(self.basis, -self.sign)

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + _SYMBOL[self.basis]

    @classmethod
    def from_label(cls, label: str) -> "Q8Element":
        """Parse labels like "+i", "-k", "1", "i"."""
        text = label.strip()
        sign = 1
        if text[:1] in "+-":
            sign = 1 if text[0] == "+" else -1
            text = text[1:]
        for basis, symbol in _SYMBOL.items():
            if text == symbol:
                return cls(basis, sign)
        raise ValueError(f"not a unit quaternion label: {label!r}")

    def inverse(self) -> "Q8Element":
        if self.basis is Basis.ONE:
            return self
        # pure units square to -1, so q^-1 = -q
        return -self


ONE = Q8Element(Basis.ONE, 1)
I = Q8Element(Basis.I, 1)
J = Q8Element(Basis.J, 1)
K = Q8Element(Basis.K, 1)

Q8_ELEMENTS = tuple(
    Q8Element(basis, sign) for basis in Basis for sign in (1, -1)
)


def q8_mul(a: Q8Element, b: Q8Element) -> Q8Element:
    """Exact group product a*b."""
    basis, factor = _MUL_TABLE[(a.basis, b.basis)]
    return Q8Element(basis, a.sign * b.sign * factor)


def q8_product(seq: Iterable[Q8Element]) -> Q8Element:
    """Left-to-right fold of q8_mul; the group is non-commutative, so
    operand order matters."""
    items = list(seq)
    if not items:
        raise ValueError("empty product")
    return reduce(q8_mul, items)


@dataclass(frozen=True)
class Quaternion:
    """Floating-point quaternion w + x i + y j + z k."""

    w: float
    x: float
    y: float
    z: float

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = other.w, other.x, other.y, other.z
        return Quaternion(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def is_pure_unit(self, tol: float = 1e-12) -> bool:
        return abs(self.w) <= tol and abs(self.norm() - 1.0) <= tol


_EMBED = {
    Basis.ONE: Quaternion(1.0, 0.0, 0.0, 0.0),
    Basis.I: Quaternion(0.0, 1.0, 0.0, 0.0),
    Basis.J: Quaternion(0.0, 0.0, 1.0, 0.0),
    Basis.K: Quaternion(0.0, 0.0, 0.0, 1.0),
}


def embed_q8(e: Q8Element) -> Quaternion:
    """Embed an exact group element as a floating quaternion."""
    base = _EMBED[e.basis]
    s = float(e.sign)
    return Quaternion(s * base.w, s * base.x, s * base.y, s * base.z)


def bloch_to_pure_quaternion(r: Sequence[float]) -> Quaternion:
    """Map a unit 3-vector (rx, ry, rz) to the pure quaternion
    rx*i + ry*j + rz*k."""
    rx, ry, rz = r
    if abs(math.sqrt(rx * rx + ry * ry + rz * rz) - 1.0) > 1e-9:
        raise ValueError("non-unit direction")
    return Quaternion(0.0, rx, ry, rz)


def canonical_phase(theta: float) -> float:
    """Reduce an angle in radians into [0, 2*pi)."""
    reduced = math.fmod(theta, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    return reduced


def phase_pair_magnitudes(t2: float, t4: float) -> tuple[float, float]:
    """Return (|e^{i t2} + e^{i t4}|, |e^{i t2} - e^{i t4}|).

    The sum of the squares of the two magnitudes is always 4, so the sum
    of the magnitudes is at most 2*sqrt(2), with equality exactly when the
    two phases differ by an odd multiple of pi/2.
    """
    z2 = cmath.exp(1j * t2)
    z4 = cmath.exp(1j * t4)
    return abs(z2 + z4), abs(z2 - z4)
