"""Simultaneous root finding for monic integer polynomials.

Strategy: Aberth-Ehrlich iteration at ~32 digits from deterministic initial
guesses, then per-root Newton polish on a precision-doubling ladder up to the
requested budget.  The whole procedure is a pure function of (poly, digits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import NonConvergence
from .polynomial import IntPolynomial
from .precision import ArbitraryComplex

__all__ = ["RootSet", "find_roots", "root_magnitude_bound", "relabel"]

_BASE_DPS = 32
_MAX_ABERTH_ITERS = 400


@dataclass(frozen=True)
class RootSet:
    """All n roots at a shared digit budget, with per-root |f(x~)| residuals."""

    roots: tuple[ArbitraryComplex, ...]
    digits: int
    residuals: tuple[mpf, ...]

    @property
    def n(self) -> int:
        return len(self.roots)


def _horner(coeffs, z):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _aberth_stage(p: IntPolynomial, dps: int):
    """Simultaneous iteration for all roots at moderate precision."""
    n = p.degree
    deriv = p.derivative_coeffs()
    with mp.workdps(dps):
        radius = mpf(1) + max(abs(c) for c in p.coeffs[:-1])
        # deterministic index-dependent perturbation breaks symmetry traps
        z = [radius * mpmath.exp(1j * (2 * mpmath.pi * (k + mpf(1) / 4) / n
                                       + mpf(k) / 1000))
             for k in range(n)]
        tol = mpf(10) ** (-(dps - 6))
        for _ in range(_MAX_ABERTH_ITERS):
            max_step = mpf(0)
            for i in range(n):
                pv = _horner(p.coeffs, z[i])
                dv = _horner(deriv, z[i])
                if dv == 0:
                    z[i] = z[i] + (mpf(1) + 1j) * radius / 1000
                    max_step = radius
                    continue
                w = pv / dv
                s = mp.mpc(0)
                for j in range(n):
                    if j != i:
                        diff = z[i] - z[j]
                        if diff == 0:
                            diff = radius * mpf(10) ** (-dps)
                        s += 1 / diff
                corr = w / (1 - w * s)
                z[i] = z[i] - corr
                max_step = max(max_step, abs(corr))
            if max_step < tol:
                return z
    raise NonConvergence(
        "simultaneous iteration did not converge",
        residuals=[abs(_horner(p.coeffs, zi)) for zi in z])


def _newton_polish(p: IntPolynomial, roots, target_dps: int):
    deriv = p.derivative_coeffs()
    dps = _BASE_DPS
    while dps < target_dps:
        dps = min(dps * 2, target_dps)
        with mp.workdps(dps + 10):
            for i, z in enumerate(roots):
                for _ in range(3):
                    dv = _horner(deriv, z)
                    if dv == 0:
                        break
                    z = z - _horner(p.coeffs, z) / dv
                roots[i] = z
    return roots


def find_roots(p: IntPolynomial, digits: int) -> RootSet:
    """All n roots of a monic square-free polynomial at the given budget.

    Residual contract: every |f(x~)| < 10^(2-digits) * max(1, |x~|)^n.
    Output order is canonical: ascending argument in (-pi, pi], then modulus.
    """
    if not p.is_monic():
        raise ValueError("find_roots expects a monic polynomial")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    n = p.degree
    if n == 1:
        root = ArbitraryComplex.from_int(-p.coeffs[0], digits)
        return RootSet((root,), digits, (mpf(0),))

    raw = _aberth_stage(p, _BASE_DPS)
    raw = _newton_polish(p, raw, digits + 8)

    with mp.workdps(digits + 10):
        bound_pow = max(mpf(1), max(abs(z) for z in raw)) ** n
        residual_cap = mpf(10) ** (2 - digits) * bound_pow
        for attempt in range(3):
            residuals = [abs(_horner(p.coeffs, z)) for z in raw]
            if max(residuals) < residual_cap:
                break
            raw = _newton_polish(p, raw, digits + 10 * (attempt + 2))
        else:
            raise NonConvergence(
                "root residuals exceed the digit-budget contract",
                residuals=residuals)

        separation = mpf(10) ** (-mpf(digits) / 2)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(raw[i] - raw[j]) <= separation:
                    raise NonConvergence(
                        "roots are not separated; input may not be square-free",
                        residuals=residuals)

        # components below the budget's own noise floor are exactly zero
        # (real/imaginary structure then survives re-rendering)
        floor = mpf(10) ** (2 - digits)
        for i, z in enumerate(raw):
            mag = abs(z)
            re = mpf(0) if z.real != 0 and abs(z.real) <= mag * floor else z.real
            im = mpf(0) if z.imag != 0 and abs(z.imag) <= mag * floor else z.imag
            raw[i] = mp.mpc(re, im)

        order = sorted(range(n),
                       key=lambda i: (mpmath.atan2(raw[i].imag, raw[i].real),
                                      abs(raw[i])))

    roots, residuals_out = [], []
    for i in order:
        with mp.workdps(digits):
            z = ArbitraryComplex(+raw[i].real, +raw[i].imag, digits)
        roots.append(z)
        with mp.workdps(digits + 10):
            residuals_out.append(abs(_horner(p.coeffs, mp.mpc(z.re, z.im))))
    return RootSet(tuple(roots), digits, tuple(residuals_out))


def root_magnitude_bound(rs: RootSet) -> float:
    """max over roots of max(1, |x~|), rounded up to 2 significant figures."""
    top = max(float(z.magnitude()) for z in rs.roots)
    b = max(1.0, top)
    if b == 1.0:
        return 1.0
    exponent = math.floor(math.log10(b))
    mantissa = math.ceil(b / 10.0 ** (exponent - 1) - 1e-12)
    if exponent >= 1:
        return float(mantissa * 10 ** (exponent - 1))
    return mantissa / 10 ** (1 - exponent)


def relabel(rs: RootSet, sigma) -> RootSet:
    """Reorder so label j carries the sigma(j)-th root of the input order."""
    roots = tuple(rs.roots[sigma(j) - 1] for j in range(1, rs.n + 1))
    residuals = tuple(rs.residuals[sigma(j) - 1] for j in range(1, rs.n + 1))
    return RootSet(roots, rs.digits, residuals)
