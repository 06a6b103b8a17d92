"""Truncated Taylor-series arithmetic for exact high-order derivatives.

A :class:`TaylorSeries` stores the coefficients ``c_k = f^(k)(x0)/k!`` of a
function at an expansion point, up to a fixed truncation order.  All
arithmetic (including exp/log/sin/cos and real powers) is closed on that
order, so the n-th derivative of any catalog expression comes out exact to
rounding -- repeated finite differencing is hopeless beyond order ~4, the
recurrences below are not.

The helper functions ``exp``, ``log``, ``sin``, ``cos``, ``powr`` accept
plain floats as well, so a model written against them evaluates identically
in ordinary and series arithmetic.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence, Union

from .errors import DomainError

Scalar = Union[float, "TaylorSeries"]


class TaylorSeries:
    """Power-series jet of fixed length ``order + 1`` at ``x0``."""

    __slots__ = ("coeffs", "x0")

    def __init__(self, coeffs: Sequence[float], x0: float = 0.0):
        if len(coeffs) < 1:
            raise ValueError("need at least the constant coefficient")
        self.coeffs = tuple(float(c) for c in coeffs)
        self.x0 = float(x0)

    @classmethod
    def variable(cls, x0: float, order: int) -> "TaylorSeries":
        """The identity function x, truncated at ``order``."""
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = [0.0] * (order + 1)
        coeffs[0] = float(x0)
        if order >= 1:
            coeffs[1] = 1.0
        return cls(coeffs, x0)

    @classmethod
    def constant(cls, value: float, like: "TaylorSeries") -> "TaylorSeries":
        coeffs = [0.0] * len(like.coeffs)
        coeffs[0] = float(value)
        return cls(coeffs, like.x0)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, k: int) -> float:
        """k-th derivative value at the expansion point."""
        if not 0 <= k <= self.order:
            raise IndexError(f"derivative order {k} outside stored range")
        return self.coeffs[k] * math.factorial(k)

    def __call__(self, x: float) -> float:
        """Evaluate the truncated polynomial at x (Horner)."""
        dx = x - self.x0
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * dx + c
        return acc

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> "TaylorSeries":
        if isinstance(other, TaylorSeries):
            if len(other.coeffs) != len(self.coeffs):
                raise ValueError("mixed truncation orders")
            if other.x0 != self.x0:
                raise ValueError("mixed expansion points")
            return other
        return TaylorSeries.constant(float(other), self)

    def __add__(self, other) -> "TaylorSeries":
        o = self._lift(other)
        return TaylorSeries([a + b for a, b in zip(self.coeffs, o.coeffs)], self.x0)

    __radd__ = __add__

    def __neg__(self) -> "TaylorSeries":
        return TaylorSeries([-a for a in self.coeffs], self.x0)

    def __sub__(self, other) -> "TaylorSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TaylorSeries":
        return (-self) + other

    def __mul__(self, other) -> "TaylorSeries":
        o = self._lift(other)
        n = len(self.coeffs)
        a, b = self.coeffs, o.coeffs
        out = [0.0] * n
        for i in range(n):
            ai = a[i]
            if ai == 0.0:
                continue
            for j in range(n - i):
                out[i + j] += ai * b[j]
        return TaylorSeries(out, self.x0)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TaylorSeries":
        o = self._lift(other)
        if o.coeffs[0] == 0.0:
            raise ZeroDivisionError("division by series with zero constant term")
        n = len(self.coeffs)
        a, b = self.coeffs, o.coeffs
        out = [0.0] * n
        for i in range(n):
            acc = a[i]
            for j in range(1, i + 1):
                acc -= b[j] * out[i - j]
            out[i] = acc / b[0]
        return TaylorSeries(out, self.x0)

    def __rtruediv__(self, other) -> "TaylorSeries":
        return self._lift(other) / self

    def __pow__(self, r) -> "TaylorSeries":
        if isinstance(r, int) and 0 <= r <= 4:
            out = TaylorSeries.constant(1.0, self)
            for _ in range(r):
                out = out * self
            return out
        return powr(self, float(r))

    def __repr__(self) -> str:
        return f"TaylorSeries({list(self.coeffs)!r}, x0={self.x0!r})"


def _series_exp(u: TaylorSeries) -> TaylorSeries:
    n = len(u.coeffs)
    uc = u.coeffs
    out = [0.0] * n
    out[0] = math.exp(uc[0])
    for k in range(1, n):
        acc = 0.0
        for j in range(1, k + 1):
            acc += j * uc[j] * out[k - j]
        out[k] = acc / k
    return TaylorSeries(out, u.x0)


def _series_log(u: TaylorSeries) -> TaylorSeries:
    if u.coeffs[0] <= 0.0:
        raise DomainError("log of series requires positive constant term")
    n = len(u.coeffs)
    uc = u.coeffs
    out = [0.0] * n
    out[0] = math.log(uc[0])
    for k in range(1, n):
        acc = k * uc[k]
        for j in range(1, k):
            acc -= j * out[j] * uc[k - j]
        out[k] = acc / (k * uc[0])
    return TaylorSeries(out, u.x0)


def _series_sincos(u: TaylorSeries) -> tuple[TaylorSeries, TaylorSeries]:
    n = len(u.coeffs)
    uc = u.coeffs
    s = [0.0] * n
    c = [0.0] * n
    s[0] = math.sin(uc[0])
    c[0] = math.cos(uc[0])
    for k in range(1, n):
        sa = 0.0
        ca = 0.0
        for j in range(1, k + 1):
            sa += j * uc[j] * c[k - j]
            ca -= j * uc[j] * s[k - j]
        s[k] = sa / k
        c[k] = ca / k
    return TaylorSeries(s, u.x0), TaylorSeries(c, u.x0)


def _series_powr(u: TaylorSeries, r: float) -> TaylorSeries:
    if u.coeffs[0] <= 0.0:
        raise DomainError("real power of series requires positive constant term")
    n = len(u.coeffs)
    uc = u.coeffs
    out = [0.0] * n
    out[0] = uc[0] ** r
    for k in range(1, n):
        acc = 0.0
        for j in range(1, k + 1):
            acc += (r * j - (k - j)) * uc[j] * out[k - j]
        out[k] = acc / (k * uc[0])
    return TaylorSeries(out, u.x0)


# -- float/series generic front ends ---------------------------------------


def exp(u: Scalar) -> Scalar:
    if isinstance(u, TaylorSeries):
        return _series_exp(u)
    return math.exp(u)


def log(u: Scalar) -> Scalar:
    if isinstance(u, TaylorSeries):
        return _series_log(u)
    if u <= 0.0:
        raise DomainError("log requires a positive argument")
    return math.log(u)


def sin(u: Scalar) -> Scalar:
    if isinstance(u, TaylorSeries):
        return _series_sincos(u)[0]
    return math.sin(u)


def cos(u: Scalar) -> Scalar:
    if isinstance(u, TaylorSeries):
        return _series_sincos(u)[1]
    return math.cos(u)


def powr(u: Scalar, r: float) -> Scalar:
    """u**r for real r; u must be positive (constant term positive for series)."""
    if isinstance(u, TaylorSeries):
        return _series_powr(u, r)
    if u < 0.0 or (u == 0.0 and r < 0.0):
        raise DomainError("real power requires a nonnegative base")
    return u ** r


def taylor_eval(fn: Callable[[Scalar], Scalar], x0: float, order: int) -> TaylorSeries:
    """Series of ``fn`` at ``x0``: coefficient k is f^(k)(x0)/k!.

    ``fn`` must be written against the generic helpers of this module.
    Domain restrictions (positivity for powers and logs) surface from the
    expression itself, so entire functions may be expanded anywhere.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    x = TaylorSeries.variable(x0, order)
    y = fn(x)
    if not isinstance(y, TaylorSeries):
        y = TaylorSeries.constant(float(y), x)
    return y


def rounding_slack(series: TaylorSeries, k: int) -> float:
    """Crude absolute slack for the k-th derivative read off ``series``.

    Scales with the largest intermediate coefficient magnitude: deep
    recurrences lose at most a few thousand ulps in practice.
    """
    mag = max(1.0, max(abs(c) for c in series.coeffs[: k + 1]))
    return 1e-12 * mag * math.factorial(k)
