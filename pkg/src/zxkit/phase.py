"""Spider phases as exact rational multiples of pi, with a real-valued fallback."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Union

PhaseLike = Union["Phase", int, Fraction]


class Phase:
    """A rotation angle modulo 2*pi.

    Exact phases store a :class:`~fractions.Fraction` ``q`` meaning ``q*pi``,
    normalised into ``[0, 2)``. Real phases store radians, normalised into
    ``[0, 2*pi)``. Any arithmetic that mixes the two produces a real phase.
    """

    __slots__ = ("_exact", "_radians")

    def __init__(self, value: PhaseLike = 0, denominator: int = 1) -> None:
        if isinstance(value, Phase):
            self._exact = value._exact
            self._radians = value._radians
            return
        if isinstance(value, float):
            raise TypeError("use Phase.real() for floating point angles")
        q = Fraction(value) / denominator
        self._exact: Fraction | None = q % 2
        self._radians: float | None = None

    @classmethod
    def real(cls, radians: float) -> "Phase":
        """Build a real-valued phase from an angle in radians."""
        p = cls.__new__(cls)
        p._exact = None
        p._radians = float(radians) % (2 * math.pi)
        return p

    @classmethod
    def coerce(cls, value: Union["Phase", int, Fraction, float]) -> "Phase":
        """Turn ints and fractions (multiples of pi) or floats (radians) into a phase."""
        if isinstance(value, Phase):
            return value
        if isinstance(value, float):
            return cls.real(value)
        return cls(value)

    @property
    def is_exact(self) -> bool:
        return self._exact is not None

    @property
    def fraction(self) -> Fraction:
        """The phase as a multiple of pi. Raises for real phases."""
        if self._exact is None:
            raise ValueError("real-valued phase has no exact fraction")
        return self._exact

    @property
    def radians(self) -> float:
        if self._exact is not None:
            return float(self._exact) * math.pi
        assert self._radians is not None
        return self._radians

    def exp(self) -> complex:
        """Return ``e^{i*phase}``, exact on multiples of pi/4 up to float rounding."""
        if self._exact is not None and (self._exact * 4).denominator == 1:
            return _EIGHTH_ROOTS[int(self._exact * 4)]
        return cmath.exp(1j * self.radians)

    def is_zero(self) -> bool:
        return self._exact == 0

    def is_pauli(self) -> bool:
        """True for the exact phases 0 and pi."""
        return self._exact is not None and self._exact.denominator == 1

    def is_proper_clifford(self) -> bool:
        """True for the exact phases pi/2 and 3pi/2."""
        return self._exact is not None and self._exact.denominator == 2

    def is_clifford(self) -> bool:
        return self._exact is not None and self._exact.denominator <= 2

    def is_t_like(self) -> bool:
        """True for odd multiples of pi/4."""
        return self._exact is not None and self._exact.denominator == 4

    def __add__(self, other: PhaseLike) -> "Phase":
        other = Phase.coerce(other)
        if self._exact is not None and other._exact is not None:
            return Phase(self._exact + other._exact)
        return Phase.real(self.radians + other.radians)

    __radd__ = __add__

    def __neg__(self) -> "Phase":
        if self._exact is not None:
            return Phase(-self._exact)
        return Phase.real(-self.radians)

    def __sub__(self, other: PhaseLike) -> "Phase":
        return self + (-Phase.coerce(other))

    def __rsub__(self, other: PhaseLike) -> "Phase":
        return Phase.coerce(other) - self

    def __mul__(self, k: int) -> "Phase":
        if not isinstance(k, int):
            return NotImplemented
        if self._exact is not None:
            return Phase(self._exact * k)
        return Phase.real(self.radians * k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Phase(other)
        if not isinstance(other, Phase):
            return NotImplemented
        if self._exact is not None and other._exact is not None:
            return self._exact == other._exact
        if self._exact is None and other._exact is None:
            return self._radians == other._radians
        return False

    def __hash__(self) -> int:
        return hash(("exact", self._exact) if self._exact is not None else ("real", self._radians))

    def __repr__(self) -> str:
        if self._exact is not None:
            return f"Phase({self._exact})"
        return f"Phase.real({self._radians!r})"

    def __str__(self) -> str:
        if self._exact is None:
            return f"{self._radians:.6g}"
        q = self._exact
        if q == 0:
            return "0"
        num = "" if q.numerator == 1 else str(q.numerator)
        if q.denominator == 1:
            return f"{num}π"
        return f"{num}π/{q.denominator}"

    def to_json(self) -> list[int] | dict[str, float]:
        if self._exact is not None:
            return [self._exact.numerator, self._exact.denominator]
        return {"real": self.radians}

    @classmethod
    def from_json(cls, data: list[int] | dict[str, float]) -> "Phase":
        if isinstance(data, dict):
            return cls.real(float(data["real"]))
        num, den = data
        if den <= 0:
            raise ValueError("phase denominator must be positive")
        return cls(int(num), int(den))


_EIGHTH_ROOTS = [
    complex(1, 0),
    complex(math.sqrt(0.5), math.sqrt(0.5)),
    complex(0, 1),
    complex(-math.sqrt(0.5), math.sqrt(0.5)),
    complex(-1, 0),
    complex(-math.sqrt(0.5), -math.sqrt(0.5)),
    complex(0, -1),
    complex(math.sqrt(0.5), -math.sqrt(0.5)),
]

ZERO = Phase(0)
PI = Phase(1)
HALF_PI = Phase(1, 2)
