from __future__ import annotations

import math
from typing import Union

import numpy as np


class Dual:
    """
    Forward-mode dual number a + b*eps with eps**2 = 0.

    Only the operations the built-in fundamental relations use are supported:
    arithmetic, real powers, exp and log.
    """

    __slots__ = ("real", "dual")

    def __init__(self, real: float, dual: float = 0.0) -> None:
        self.real = float(real)
        self.dual = float(dual)

    def __repr__(self) -> str:
        return f"Dual({self.real!r}, {self.dual!r})"

    @staticmethod
    def _coerce(other: object) -> "Dual":
        if isinstance(other, Dual):
            return other
        if np.isscalar(other):
            return Dual(float(other), 0.0)  # type: ignore[arg-type]
        raise TypeError(f"Unsupported operand for Dual: {type(other).__name__}")

    def __add__(self, other: object) -> "Dual":
        o = self._coerce(other)
        return Dual(self.real + o.real, self.dual + o.dual)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Dual":
        o = self._coerce(other)
        return Dual(self.real - o.real, self.dual - o.dual)

    def __rsub__(self, other: object) -> "Dual":
        o = self._coerce(other)
        return Dual(o.real - self.real, o.dual - self.dual)

    def __mul__(self, other: object) -> "Dual":
        o = self._coerce(other)
        return Dual(self.real * o.real, self.dual * o.real + self.real * o.dual)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Dual":
        o = self._coerce(other)
        if o.real == 0.0:
            raise ZeroDivisionError("Dual division by zero real part")
        return Dual(self.real / o.real, (self.dual - self.real / o.real * o.dual) / o.real)

    def __rtruediv__(self, other: object) -> "Dual":
        return self._coerce(other).__truediv__(self)

    def __neg__(self) -> "Dual":
        return Dual(-self.real, -self.dual)

    def __pos__(self) -> "Dual":
        return self

    def __pow__(self, exponent: object) -> "Dual":
        if isinstance(exponent, Dual):
            # a**b = exp(b*log(a))
            return exp(exponent * log(self))
        p = float(exponent)  # type: ignore[arg-type]
        value = self.real**p
        return Dual(value, p * self.real ** (p - 1.0) * self.dual)


Scalar = Union[float, Dual]


def exp(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        e = math.exp(x.real)
        return Dual(e, e * x.dual)
    return float(np.exp(x))


def log(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        if x.real <= 0.0:
            raise ValueError("log of non-positive dual number")
        return Dual(math.log(x.real), x.dual / x.real)
    return float(np.log(x))


def real_part(x: Scalar) -> float:
    return x.real if isinstance(x, Dual) else float(x)


def dual_part(x: Scalar) -> float:
    # Plain floats are constants: zero derivative.
    return x.dual if isinstance(x, Dual) else 0.0
