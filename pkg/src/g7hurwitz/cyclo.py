"""Exact arithmetic in the 12th cyclotomic field Q(z), z = exp(i*pi/6).

Elements are stored over the power basis {1, z, z^2, z^3} with rational
coordinates; the relation z^4 = z^2 - 1 is applied after every product, so
two values are equal exactly when their coordinates are.  Coordinates are
gmpy2 ``mpq`` rationals, which compare and hash like ``fractions.Fraction``.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from typing import Iterable, Union

from gmpy2 import mpq

__all__ = [
    "CycNum",
    "ZERO",
    "ONE",
    "ZETA",
    "I",
    "SQRT3",
    "HALF",
    "embed_special",
    "zeta_power",
]

Scalar = Union[int, Fraction, "mpq"]
_SCALARS = (int, Fraction, type(mpq()))


class CycNum:
    """An element of Q(z) with coordinates ``coeffs`` over (1, z, z^2, z^3)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = (0, 0, 0, 0)):
        c = tuple(mpq(x) for x in coeffs)
        if len(c) != 4:
            raise ValueError("CycNum needs exactly 4 coordinates")
        self.coeffs: tuple[mpq, mpq, mpq, mpq] = c  # type: ignore[assignment]
        self._hash = hash(c)

    @classmethod
    def from_scalar(cls, x: Scalar) -> CycNum:
        return cls((x, 0, 0, 0))

    # -- ring operations -------------------------------------------------

    def __add__(self, other: CycNum | Scalar) -> CycNum:
        other = _coerce(other)
        return CycNum(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(-a for a in self.coeffs)

    def __sub__(self, other: CycNum | Scalar) -> CycNum:
        return self + (-_coerce(other))

    def __rsub__(self, other: Scalar) -> CycNum:
        return _coerce(other) - self

    def __mul__(self, other: CycNum | Scalar) -> CycNum:
        if isinstance(other, _SCALARS):
            return CycNum(a * other for a in self.coeffs)
        a0, a1, a2, a3 = self.coeffs
        b0, b1, b2, b3 = other.coeffs
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        c4 = a1 * b3 + a2 * b2 + a3 * b1
        c5 = a2 * b3 + a3 * b2
        c6 = a3 * b3
        # z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        return CycNum((c0 - c4 - c6, c1 - c5, c2 + c4, c3 + c5))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycNum:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> CycNum:
        """Multiplicative inverse, by solving the 4x4 rational system a*x = 1."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_12)")
        # column j of the multiplication matrix is a * z^j
        cols = [(self * _BASIS[j]).coeffs for j in range(4)]
        rows = [[cols[j][i] for j in range(4)] + [mpq(int(i == 0))] for i in range(4)]
        for col in range(4):
            piv = next(r for r in range(col, 4) if rows[r][col] != 0)
            rows[col], rows[piv] = rows[piv], rows[col]
            p = rows[col][col]
            rows[col] = [v / p for v in rows[col]]
            for r in range(4):
                if r != col and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
        return CycNum(rows[i][4] for i in range(4))

    def __truediv__(self, other: CycNum | Scalar) -> CycNum:
        return self * _coerce(other).inverse()

    def conjugate(self) -> CycNum:
        """Complex conjugation, i.e. the field automorphism z -> z^11."""
        a0, a1, a2, a3 = self.coeffs
        zb = ZETA_INV
        return a0 * ONE + a1 * zb + a2 * zb * zb + a3 * zb * zb * zb

    # -- comparison and hashing ------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, _SCALARS):
            other = CycNum.from_scalar(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- text ------------------------------------------------------------

    def serialize(self) -> str:
        """Canonical text form ``a + b*z + c*z2 + d*z3``; equal strings iff equal values."""
        a0, a1, a2, a3 = (str(c) for c in self.coeffs)
        return f"{a0} + {a1}*z + {a2}*z2 + {a3}*z3"

    @classmethod
    def parse(cls, text: str) -> CycNum:
        m = _SERIAL_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"not a serialized CycNum: {text!r}")
        return cls(mpq(g) for g in m.groups())

    def __str__(self) -> str:
        return self.serialize()

    def __repr__(self) -> str:
        return f"CycNum({self.serialize()!r})"

    def to_complex(self) -> complex:
        """Floating-point value, for display only."""
        z = cmath.exp(1j * cmath.pi / 6)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))


_SERIAL_RE = re.compile(
    r"(-?\d+(?:/\d+)?) \+ (-?\d+(?:/\d+)?)\*z \+ (-?\d+(?:/\d+)?)\*z2 \+ (-?\d+(?:/\d+)?)\*z3"
)


def _coerce(x: CycNum | Scalar) -> CycNum:
    if isinstance(x, CycNum):
        return x
    return CycNum.from_scalar(x)


ZERO = CycNum((0, 0, 0, 0))
ONE = CycNum((1, 0, 0, 0))
ZETA = CycNum((0, 1, 0, 0))
I = CycNum((0, 0, 0, 1))
HALF = CycNum((mpq(1, 2), 0, 0, 0))
_BASIS = (ONE, ZETA, CycNum((0, 0, 1, 0)), I)
# z^11 = -z^5 = z - z^3
ZETA_INV = CycNum((0, 1, 0, -1))
SQRT3 = ZETA + ZETA_INV


def zeta_power(k: int) -> CycNum:
    return ZETA ** (k % 12)


def embed_special(tag: str) -> CycNum:
    """Named constants: ``one``, ``i``, ``sqrt3``, ``half``, ``zeta``."""
    table = {"one": ONE, "i": I, "sqrt3": SQRT3, "half": HALF, "zeta": ZETA}
    try:
        return table[tag]
    except KeyError:
        raise ValueError(f"unknown constant {tag!r}") from None
