"""Arbitrary-precision complex arithmetic with explicit decimal digit budgets.

Every value knows the decimal working precision it was computed at; arithmetic
between two values is carried out (and correctly rounded) at the smaller of the
two budgets.  mpmath supplies the underlying real arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

__all__ = [
    "ArbitraryComplex",
    "RootOfUnityValue",
    "make_complex",
    "root_of_unity",
    "principal_root",
    "nearest_integer",
    "is_prime",
]

# extra digits used inside multi-step kernels (magnitude, arg, powers)
_GUARD = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ArbitraryComplex:
    """A complex number carried at an explicit decimal digit budget."""

    re: mpf
    im: mpf
    digits: int

    @classmethod
    def from_int(cls, value: int, digits: int) -> "ArbitraryComplex":
        with mp.workdps(digits):
            return cls(+mpf(value), mpf(0), digits)

    @classmethod
    def zero(cls, digits: int) -> "ArbitraryComplex":
        return cls(mpf(0), mpf(0), digits)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other: "ArbitraryComplex") -> "ArbitraryComplex":
        d = min(self.digits, other.digits)
        with mp.workdps(d):
            return ArbitraryComplex(self.re + other.re, self.im + other.im, d)

    def __sub__(self, other: "ArbitraryComplex") -> "ArbitraryComplex":
        d = min(self.digits, other.digits)
        with mp.workdps(d):
            return ArbitraryComplex(self.re - other.re, self.im - other.im, d)

    def __neg__(self) -> "ArbitraryComplex":
        return ArbitraryComplex(-self.re, -self.im, self.digits)

    def __mul__(self, other: "ArbitraryComplex") -> "ArbitraryComplex":
        d = min(self.digits, other.digits)
        with mp.workdps(d):
            re = self.re * other.re - self.im * other.im
            im = self.re * other.im + self.im * other.re
            return ArbitraryComplex(re, im, d)

    def scaled_by_int(self, k: int) -> "ArbitraryComplex":
        with mp.workdps(self.digits):
            return ArbitraryComplex(self.re * k, self.im * k, self.digits)

    def divided_by_int(self, k: int) -> "ArbitraryComplex":
        with mp.workdps(self.digits):
            return ArbitraryComplex(self.re / k, self.im / k, self.digits)

    def conjugate(self) -> "ArbitraryComplex":
        return ArbitraryComplex(self.re, -self.im, self.digits)

    def power_int(self, e: int) -> "ArbitraryComplex":
        """e-th power (e >= 0) by repeated multiplication."""
        if e < 0:
            raise ValueError("negative exponent")
        acc = ArbitraryComplex.from_int(1, self.digits)
        for _ in range(e):
            acc = acc * self
        return acc

    def magnitude(self) -> mpf:
        with mp.workdps(self.digits + _GUARD):
            return mpmath.hypot(self.re, self.im)

    def distance(self, other: "ArbitraryComplex") -> mpf:
        d = min(self.digits, other.digits)
        with mp.workdps(d + _GUARD):
            return mpmath.hypot(self.re - other.re, self.im - other.im)

    def re_string(self) -> str:
        return mpmath.nstr(self.re, self.digits)

    def im_string(self) -> str:
        return mpmath.nstr(self.im, self.digits)

    def __str__(self) -> str:
        if self.im == 0:
            return self.re_string()
        sign = "-" if self.im < 0 else "+"
        return f"{self.re_string()} {sign} {mpmath.nstr(abs(self.im), self.digits)}i"


@dataclass(frozen=True)
class RootOfUnityValue:
    """Numeric value of zeta_p^k for prime p, with its digit budget."""

    order: int
    power: int
    value: ArbitraryComplex


def make_complex(re: str, im: str, digits: int) -> ArbitraryComplex:
    """Build a value from signed decimal strings at the given digit budget."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    try:
        with mp.workdps(digits):
            return ArbitraryComplex(mpf(re), mpf(im), digits)
    except ValueError as exc:
        raise ValueError(f"malformed decimal string: {exc}") from None


def root_of_unity(p: int, k: int, digits: int) -> RootOfUnityValue:
    """cos(2*pi*k/p) + i*sin(2*pi*k/p) at the requested precision."""
    if not is_prime(p):
        raise ValueError(f"order {p} is not prime")
    if not 0 <= k < p:
        raise ValueError(f"power {k} not in [0, {p})")
    if k == 0:
        return RootOfUnityValue(p, 0, ArbitraryComplex.from_int(1, digits))
    if p == 2:
        return RootOfUnityValue(2, 1, ArbitraryComplex.from_int(-1, digits))
    with mp.workdps(digits + _GUARD):
        t = mpf(2 * k) / p
        re = mpmath.cospi(t)
        im = mpmath.sinpi(t)
    with mp.workdps(digits):
        return RootOfUnityValue(p, k, ArbitraryComplex(+re, +im, digits))


def principal_root(z: ArbitraryComplex, p: int) -> ArbitraryComplex:
    """The p-th root w of z with arg(w) in (-pi/p, pi/p]; zero maps to zero.

    Imaginary parts below the rounding floor are snapped to zero first so that
    values that are exactly real (up to working precision) stay on one side of
    the branch cut regardless of noise sign.
    """
    if p < 1:
        raise ValueError("root degree must be >= 1")
    if z.is_zero():
        return ArbitraryComplex.zero(z.digits)
    digits = z.digits
    with mp.workdps(digits + _GUARD):
        re, im = z.re, z.im
        mag = mpmath.hypot(re, im)
        if im != 0 and abs(im) <= mag * mpf(10) ** (2 - digits):
            im = mpf(0)
        theta = mpmath.atan2(im, re) / p
        r = mpmath.root(mag, p)
        w_re = r * mpmath.cos(theta)
        w_im = r * mpmath.sin(theta)
        floor = r * mpf(10) ** (2 - digits)
        if w_re != 0 and abs(w_re) <= floor:
            w_re = mpf(0)
        if w_im != 0 and abs(w_im) <= floor:
            w_im = mpf(0)
    with mp.workdps(digits):
        return ArbitraryComplex(+w_re, +w_im, digits)


def nearest_integer(z: ArbitraryComplex) -> tuple[int, mpf]:
    """Nearest integer to re(z) and the residual max(|re - n|, |im|)."""
    with mp.workdps(z.digits + _GUARD):
        n = int(mpmath.nint(z.re))
        residual = max(abs(z.re - n), abs(z.im))
    return n, residual
