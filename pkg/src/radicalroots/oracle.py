"""Brute-force integrality certificates and the root-labeling search.

Invariant polynomials of the group take integer values on the labeled roots of
a monic integer polynomial; these checks certify a labeling (or find one) and
cross-check the main pipeline without touching the tensor transforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import LabelingAmbiguous, LabelingFailed, ResidualTooLarge
from .groups import (PermutationGroup, Permutation, coset_representatives,
                     normalizer_in_symmetric, orbit_sum_invariant)
from .precision import ArbitraryComplex, nearest_integer
from .rootfinder import RootSet, relabel

__all__ = [
    "invariant_value",
    "coset_product_certificate",
    "label_roots",
    "CertificateResult",
    "LabelingResult",
    "default_labeling_invariants",
]

DEFAULT_LABELING_TOLERANCE = 1e-6
# low-degree monomials keep the invariant's coefficient sum small
_DEFAULT_MONOMIALS = ((1, 2), (1, 1, 2), (2, 1))


def _monomial_value(exponents, roots) -> ArbitraryComplex:
    digits = roots[0].digits
    acc = ArbitraryComplex.from_int(1, digits)
    for j, k in enumerate(exponents):
        if k:
            acc = acc * roots[j].power_int(k)
    return acc


def _orbit_value(orbit, roots) -> ArbitraryComplex:
    digits = roots[0].digits
    acc = ArbitraryComplex.zero(digits)
    for vec in orbit:
        acc = acc + _monomial_value(vec, roots)
    return acc


def invariant_value(G: PermutationGroup, orbit, roots,
                    tolerance: float = 0.25) -> tuple[int, mpf]:
    """Evaluate an orbit-sum invariant on labeled roots and round it.

    ``roots`` is a RootSet (labeled order) or a sequence of values.  Raises
    ResidualTooLarge when the value is not close to an integer (labeling
    inconsistent with the group, or precision too short).
    """
    values = roots.roots if isinstance(roots, RootSet) else tuple(roots)
    n, residual = nearest_integer(_orbit_value(orbit, values))
    if residual >= tolerance:
        raise ResidualTooLarge(
            f"orbit sum is {mpmath.nstr(residual, 4)} away from an integer "
            f"(tolerance {tolerance}); labeling inconsistent with the group, "
            "or precision too short", residual=residual)
    return n, residual


@dataclass(frozen=True)
class CertificateResult:
    """Monic integer polynomial certifying that an invariant is an integer."""

    coefficients: tuple[int, ...]          # ascending, monic
    residuals: tuple[mpf, ...]
    theta_value: ArbitraryComplex
    membership_residual: mpf

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def coset_product_certificate(G: PermutationGroup, orbit, roots: RootSet,
                              tolerance: float = 0.25,
                              degree_cap: int = 6) -> CertificateResult:
    """Expand F(x) = prod over coset representatives of (x - sigma.theta).

    F is invariant under the full symmetric group, so its coefficients round
    to integers; the labeled theta value must be a root of the rounded F.
    """
    n = G.degree
    values = roots.roots
    digits = roots.digits
    reps = coset_representatives(n, G, cap=degree_cap)
    coeffs = [ArbitraryComplex.from_int(1, digits)]
    for rep in reps:
        moved = tuple(values[rep(j) - 1] for j in range(1, n + 1))
        v = _orbit_value(orbit, moved)
        nxt = [ArbitraryComplex.zero(digits) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - v * c
        coeffs = nxt
    ints, residuals = [], []
    for i, c in enumerate(coeffs):
        k, res = nearest_integer(c)
        if res >= tolerance:
            raise ResidualTooLarge(
                f"certificate coefficient {i} is {mpmath.nstr(res, 4)} away "
                f"from an integer (tolerance {tolerance})",
                position=i, residual=res)
        ints.append(k)
        residuals.append(res)
    theta_val = _orbit_value(orbit, values)
    acc = ArbitraryComplex.zero(digits)
    for c in reversed(ints):
        acc = acc * theta_val + ArbitraryComplex.from_int(c, digits)
    membership = acc.magnitude()
    cap = tolerance * (1 + theta_val.magnitude()) ** len(reps)
    if membership >= cap:
        raise ResidualTooLarge(
            "labeled invariant is not a root of its own certificate "
            f"polynomial (|F(theta)| = {mpmath.nstr(membership, 4)})",
            residual=membership)
    return CertificateResult(tuple(ints), tuple(residuals), theta_val, membership)


def default_labeling_invariants(G: PermutationGroup, with_names: bool = False):
    """Orbit sums of a few low-degree monomials, sized to the group degree.

    Monomials whose orbits coincide (one may be another's image) are deduped.
    """
    orbits, named, seen = [], [], set()
    for template in _DEFAULT_MONOMIALS:
        if len(template) > G.degree:
            continue
        vec = template + (0,) * (G.degree - len(template))
        orbit = orbit_sum_invariant(G, vec)
        key = tuple(orbit)
        if key in seen:
            continue
        seen.add(key)
        orbits.append(orbit)
        name = "*".join(f"x_{j + 1}^{k}" if k > 1 else f"x_{j + 1}"
                        for j, k in enumerate(vec) if k)
        named.append((name, orbit))
    return named if with_names else orbits


@dataclass(frozen=True)
class LabelingResult:
    permutation: Permutation          # label j takes input root permutation(j)
    labeled: RootSet
    candidates_passed: int


def label_roots(G: PermutationGroup, roots: RootSet, invariants=None,
                tolerance: float = DEFAULT_LABELING_TOLERANCE,
                degree_cap: int = 8) -> LabelingResult:
    """Find a labeling of the roots consistent with the group action.

    Starting from the input order as a provisional labeling, each coset
    representative of the symmetric group modulo G is tested: a valid
    relabeling makes every invariant in the test set integral.  Labelings that
    differ by an element of the normalizer of G are equivalent (they induce
    the same permutation action), so multiple passes within one normalizer
    coset are fine; passes across different normalizer cosets raise
    LabelingAmbiguous, and no pass at all raises LabelingFailed.  Best-effort:
    ambiguity means the caller must supply the labeling.
    """
    n = G.degree
    if roots.n != n:
        raise ValueError("root count does not match the group degree")
    if invariants is None:
        invariants = default_labeling_invariants(G)
    reps = coset_representatives(n, G, cap=degree_cap)
    passing = []
    for rep in reps:
        moved = tuple(roots.roots[rep(j) - 1] for j in range(1, n + 1))
        ok = True
        for orbit in invariants:
            _, residual = nearest_integer(_orbit_value(orbit, moved))
            if residual >= tolerance:
                ok = False
                break
        if ok:
            passing.append(rep)
    if not passing:
        raise LabelingFailed(
            "no coset representative makes the test invariants integral; "
            "check the group, or supply --root-order explicitly")
    if len(passing) > 1:
        normalizer = normalizer_in_symmetric(G, cap=degree_cap)
        first_inv = passing[0].inverse()
        for other in passing[1:]:
            if (first_inv * other).images not in normalizer:
                raise LabelingAmbiguous(
                    f"{len(passing)} inequivalent labelings pass the "
                    "integrality tests; supply --root-order explicitly")
    sigma = passing[0]
    return LabelingResult(sigma, relabel(roots, sigma), len(passing))
