"""End-to-end orchestration: parse, reduce, root-find, plan, transform,
round, reconstruct, verify."""

from __future__ import annotations

from .errors import InputSyntaxError, PhaseAmbiguous
from .groups import Permutation, closure, composition_series, parse_cycles
from .oracle import label_roots
from .polynomial import IntPolynomial, parse_polynomial, to_monic
from .radical import SolveReport, evaluate, reconstruct, verify
from .resolvent import (MultiplicationCounter, build_theta0, forward_pass,
                        multiplication_budget, plan_precision, round_theta_m,
                        zeta_tables)
from .rootfinder import find_roots, relabel, root_magnitude_bound

__all__ = ["solve"]

_COARSE_DIGITS = 32
_PHASE_RETRIES = 3


def _as_polynomial(poly) -> IntPolynomial:
    if isinstance(poly, IntPolynomial):
        return poly
    if isinstance(poly, str):
        return parse_polynomial(poly)
    return IntPolynomial(tuple(int(c) for c in poly))


def _as_generators(generators, degree: int):
    gens = []
    items = generators.split(";") if isinstance(generators, str) else generators
    for item in items:
        if isinstance(item, Permutation):
            gens.append(item)
        else:
            gens.append(parse_cycles(item, degree))
    return gens


def _as_labeling(labeling, degree: int) -> Permutation:
    if isinstance(labeling, Permutation):
        sigma = labeling
    else:
        if isinstance(labeling, str):
            labeling = [int(t) for t in labeling.replace(";", ",").split(",")]
        sigma = Permutation(tuple(int(i) for i in labeling))
    if sigma.degree != degree:
        raise InputSyntaxError(
            f"labeling must list {degree} root positions, got {sigma.degree}")
    return sigma


def solve(poly, generators, *, digits: int | None = None, margin: int = 6,
          tolerance: float = 0.25, labeling="auto", invariants=None,
          run_verification: bool = True) -> SolveReport:
    """Solve a monic-reducible integer polynomial by radicals.

    ``poly`` is polynomial text, an ascending coefficient list, or an
    IntPolynomial; ``generators`` is cycle-notation text separated by ``;`` or
    a list of permutations; ``labeling`` is "auto" or an explicit assignment
    (label j takes the j-th listed position of the canonically ordered roots).

    The digit budget comes from the precision plan unless overridden; on
    PhaseAmbiguous the budget is doubled, up to 3 times.
    """
    polynomial = _as_polynomial(poly)
    reduction = to_monic(polynomial)
    monic = reduction.monic
    degree = monic.degree
    gens = _as_generators(generators, degree)
    group = closure(gens, degree)
    series = composition_series(group)

    coarse = find_roots(monic, _COARSE_DIGITS)
    x0_bound = root_magnitude_bound(coarse)
    plan = plan_precision(series, x0_bound, margin)
    budget_digits = digits if digits is not None else plan.digits

    notes: list[str] = []
    if reduction.scale != 1:
        notes.append(f"solved the monic reduction ({reduction.note}); "
                     f"divide the roots by {reduction.scale}")

    last_phase_error: PhaseAmbiguous | None = None
    for attempt in range(_PHASE_RETRIES + 1):
        roots = find_roots(monic, budget_digits)
        if labeling == "auto":
            label = label_roots(group, roots, invariants)
            sigma, labeled = label.permutation, label.labeled
        else:
            sigma = _as_labeling(labeling, degree)
            labeled = relabel(roots, sigma)
        zetas = zeta_tables(series, budget_digits)
        theta0 = build_theta0(labeled, series)
        counter = MultiplicationCounter(budget=multiplication_budget(series))
        forward = forward_pass(theta0, series, zetas, counter)
        int_theta = round_theta_m(forward.thetas[-1], tolerance)
        try:
            recon = reconstruct(series, int_theta, forward.resolvents, zetas,
                                digits=budget_digits)
        except PhaseAmbiguous as exc:
            last_phase_error = exc
            budget_digits *= 2
            notes.append(f"branch selection ambiguous; digits doubled to "
                         f"{budget_digits}")
            continue
        evaluations = tuple(evaluate(e, budget_digits) for e in recon.root_exprs)
        deviations = tuple(verify(recon.root_exprs, labeled, budget_digits)) \
            if run_verification else None
        return SolveReport(
            polynomial=polynomial, reduction=reduction, series=series,
            plan=plan, digits=budget_digits, roots=labeled, labeling=sigma,
            theta=int_theta, root_exprs=recon.root_exprs,
            theta0_exprs=recon.theta0_exprs, evaluations=evaluations,
            verification=deviations, multiplications=counter.count,
            budget=counter.budget, branch_log=recon.branch_log,
            zero_notes=recon.zero_notes, notes=tuple(notes))
    raise last_phase_error
