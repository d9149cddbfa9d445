"""Backward pass: exact radical expressions from the rounded integer tensor.

Expression trees are built over integers, roots of unity (kept symbolic),
sums, products, 1/p scalings, and branch-tagged p-th roots.  A node
``Root(p, radicand, s)`` denotes zeta_p^s times the principal p-th root of the
radicand.  Branches are selected against the resolvent arrays stored during
the forward pass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

import mpmath
from mpmath import mpf

from .errors import PhaseAmbiguous, VerificationFailed
from .groups import CompositionSeries, Permutation
from .polynomial import IntPolynomial, MonicReduction
from .precision import ArbitraryComplex, principal_root, root_of_unity
from .resolvent import (IntegerThetaTensor, PrecisionPlan, axis_lines,
                        position_root_indices)
from .rootfinder import RootSet

__all__ = [
    "IntegerLiteral", "RationalScale", "RootOfUnitySymbol", "Sum", "Product",
    "Root", "RadicalExpr", "BranchChoice", "ZeroRadicandNote",
    "ReconstructionResult", "SolveReport",
    "reconstruct", "evaluate", "emit", "parse_expr_json", "verify",
]


@dataclass(frozen=True)
class IntegerLiteral:
    value: int


@dataclass(frozen=True)
class RationalScale:
    """A 1/denominator factor applied to a child expression."""

    denominator: int
    child: "RadicalExpr"


@dataclass(frozen=True)
class RootOfUnitySymbol:
    order: int
    power: int


@dataclass(frozen=True)
class Sum:
    terms: tuple["RadicalExpr", ...]


@dataclass(frozen=True)
class Product:
    factors: tuple["RadicalExpr", ...]


@dataclass(frozen=True)
class Root:
    """zeta_degree^branch times the principal degree-th root of the radicand."""

    degree: int
    radicand: "RadicalExpr"
    branch: int


RadicalExpr = Union[IntegerLiteral, RationalScale, RootOfUnitySymbol,
                    Sum, Product, Root]

_ZERO = IntegerLiteral(0)
_ONE = IntegerLiteral(1)


def _zeta(p: int, k: int) -> RadicalExpr:
    k %= p
    if k == 0:
        return _ONE
    if p == 2:
        return IntegerLiteral(-1)
    return RootOfUnitySymbol(p, k)


def make_product(factors) -> RadicalExpr:
    """Light folding: integer factors multiply out, zeta powers combine."""
    int_part = 1
    zetas: dict[int, int] = {}
    rest: list[RadicalExpr] = []
    for f in factors:
        if isinstance(f, IntegerLiteral):
            int_part *= f.value
        elif isinstance(f, RootOfUnitySymbol):
            zetas[f.order] = (zetas.get(f.order, 0) + f.power) % f.order
        else:
            rest.append(f)
    if int_part == 0:
        return _ZERO
    if int_part == -1:
        for i, f in enumerate(rest):
            if isinstance(f, Root) and f.degree == 2:
                rest[i] = Root(2, f.radicand, (f.branch + 1) % 2)
                int_part = 1
                break
    out: list[RadicalExpr] = []
    if int_part != 1:
        out.append(IntegerLiteral(int_part))
    for p in sorted(zetas):
        z = _zeta(p, zetas[p])
        if isinstance(z, IntegerLiteral):
            if z.value == -1 and out and isinstance(out[0], IntegerLiteral):
                out[0] = IntegerLiteral(-out[0].value)
            elif z.value != 1:
                out.insert(0, z)
            continue
        # a zeta weight merges into the branch tag of a matching root
        for i, f in enumerate(rest):
            if isinstance(f, Root) and f.degree == p:
                rest[i] = Root(p, f.radicand, (f.branch + zetas[p]) % p)
                break
        else:
            out.append(z)
    out.extend(rest)
    if not out:
        return _ONE
    if len(out) == 1:
        return out[0]
    return Product(tuple(out))


def make_sum(terms) -> RadicalExpr:
    """Light folding: drop zero summands, merge integer literals."""
    int_part = 0
    rest: list[RadicalExpr] = []
    for t in terms:
        if isinstance(t, IntegerLiteral):
            int_part += t.value
        else:
            rest.append(t)
    out: list[RadicalExpr] = []
    if int_part != 0:
        out.append(IntegerLiteral(int_part))
    out.extend(rest)
    if not out:
        return _ZERO
    if len(out) == 1:
        return out[0]
    return Sum(tuple(out))


def make_root(degree: int, radicand: RadicalExpr, branch: int) -> RadicalExpr:
    if radicand == _ZERO:
        return _ZERO
    return Root(degree, radicand, branch % degree)


def make_scale(denominator: int, child: RadicalExpr) -> RadicalExpr:
    if isinstance(child, IntegerLiteral):
        if child.value == 0:
            return _ZERO
        if child.value % denominator == 0:
            return IntegerLiteral(child.value // denominator)
    return RationalScale(denominator, child)


def evaluate(expr: RadicalExpr, digits: int, _cache=None) -> ArbitraryComplex:
    """Deterministic bottom-up numeric evaluation at the given digit budget."""
    if _cache is None:
        _cache = {}
    # cache entries hold the node itself so its id cannot be recycled
    key = id(expr)
    hit = _cache.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(expr, IntegerLiteral):
        val = ArbitraryComplex.from_int(expr.value, digits)
    elif isinstance(expr, RationalScale):
        val = evaluate(expr.child, digits, _cache).divided_by_int(expr.denominator)
    elif isinstance(expr, RootOfUnitySymbol):
        val = root_of_unity(expr.order, expr.power, digits).value
    elif isinstance(expr, Sum):
        val = ArbitraryComplex.zero(digits)
        for t in expr.terms:
            val = val + evaluate(t, digits, _cache)
    elif isinstance(expr, Product):
        val = ArbitraryComplex.from_int(1, digits)
        for f in expr.factors:
            val = val * evaluate(f, digits, _cache)
    elif isinstance(expr, Root):
        val = principal_root(evaluate(expr.radicand, digits, _cache), expr.degree)
        if expr.branch:
            val = val * root_of_unity(expr.degree, expr.branch, digits).value
    else:
        raise TypeError(f"not a radical expression node: {expr!r}")
    _cache[key] = (expr, val)
    return val


@dataclass(frozen=True)
class BranchChoice:
    """Record of one accepted p-th-root branch selection."""

    level: int
    flat_index: int
    degree: int
    branch: int
    best_distance: mpf
    second_distance: mpf
    delta: mpf


@dataclass(frozen=True)
class ZeroRadicandNote:
    """A resolvent entry vanished; its root was simplified to 0."""

    level: int
    flat_index: int


@dataclass(frozen=True)
class ReconstructionResult:
    root_exprs: tuple[RadicalExpr, ...]       # indexed by root label 1..n
    theta0_exprs: tuple[RadicalExpr, ...]     # full position tensor
    branch_log: tuple[BranchChoice, ...]
    zero_notes: tuple[ZeroRadicandNote, ...]
    digits: int


def reconstruct(series: CompositionSeries, int_theta: IntegerThetaTensor,
                stored_L, zetas, *, digits: int | None = None,
                delta=None) -> ReconstructionResult:
    """Work the tensor transforms backward, picking root branches numerically.

    For each level i = m..1 and resolvent index k, the exact combination
    E_k = sum_j Theta_i[...,j,...] * zeta_i^{jk} equals the p_i-th power of the
    stored resolvent entry; the branch s of its p_i-th root is the one whose
    numeric value lands on the stored entry.  Acceptance requires the best
    branch within delta and every other branch beyond 2*delta, else
    PhaseAmbiguous.  Radicands indistinguishable from zero are collapsed to 0.
    """
    if digits is None:
        digits = stored_L[0].digits if stored_L else 32
    if delta is None:
        delta = mpf(10) ** (-mpf(digits) / 4)
    cache: dict = {}
    radices = int_theta.radices
    exact: list[RadicalExpr] = [IntegerLiteral(v) for v in int_theta.values]
    branch_log: list[BranchChoice] = []
    zero_notes: list[ZeroRadicandNote] = []

    for level in range(series.length, 0, -1):
        p = radices[level - 1]
        stored = stored_L[level - 1]
        new_exact: list[RadicalExpr] = [None] * len(exact)  # type: ignore
        for line in axis_lines(radices, level - 1):
            line_exprs = [exact[i] for i in line]
            line_scale = mpf(0)
            for expr in line_exprs:
                line_scale += evaluate(expr, digits, cache).magnitude()
            # radicand values below the evaluation noise floor are zero; the
            # p-th root inflates noise to noise^(1/p), so test at that scale
            noise = line_scale * mpf(10) ** (4 - digits)
            w_floor = max(noise ** (mpf(1) / p), mpf(10) ** (-digits))
            l_exact: list[RadicalExpr] = []
            for k in range(p):
                e_k = make_sum(make_product([_zeta(p, j * k), line_exprs[j]])
                               for j in range(p))
                z = evaluate(e_k, digits, cache)
                w = principal_root(z, p)
                target = stored.data[line[k]]
                z_vanishes = w.magnitude() <= w_floor
                target_vanishes = target.magnitude() < delta
                if z_vanishes and target_vanishes:
                    l_exact.append(_ZERO)
                    zero_notes.append(ZeroRadicandNote(level, line[k]))
                    continue
                if z_vanishes != target_vanishes:
                    raise PhaseAmbiguous(
                        f"resolvent magnitude inconsistent at level {level}, "
                        f"index {line[k]}: radicand magnitude "
                        f"{mpmath.nstr(w.magnitude(), 4)} vs stored "
                        f"{mpmath.nstr(target.magnitude(), 4)}")
                distances = sorted(
                    ((w * zetas[p][s].value).distance(target), s)
                    for s in range(p))
                best_d, best_s = distances[0]
                second_d = distances[1][0] if p > 1 else mpf("inf")
                if best_d >= delta or second_d <= 2 * delta:
                    raise PhaseAmbiguous(
                        f"cannot fix the branch of a {p}-th root at level "
                        f"{level}, index {line[k]}: nearest branch at distance "
                        f"{mpmath.nstr(best_d, 4)}, next at "
                        f"{mpmath.nstr(second_d, 4)}, delta "
                        f"{mpmath.nstr(delta, 4)}")
                branch_log.append(BranchChoice(level, line[k], p, best_s,
                                               best_d, second_d, delta))
                l_exact.append(make_root(p, e_k, best_s))
            for j in range(p):
                combo = make_sum(make_product([_zeta(p, -j * k), l_exact[k]])
                                 for k in range(p))
                new_exact[line[j]] = make_scale(p, combo)
        exact = new_exact

    indices = position_root_indices(series)
    by_root: dict[int, RadicalExpr] = {}
    for flat, label in enumerate(indices):
        by_root.setdefault(label, exact[flat])
    n = series.degree
    missing = [r for r in range(1, n + 1) if r not in by_root]
    if missing:
        raise ValueError(f"no tensor position maps to roots {missing}")
    return ReconstructionResult(
        tuple(by_root[r] for r in range(1, n + 1)),
        tuple(exact), tuple(branch_log), tuple(zero_notes), digits)


# --- rendering -------------------------------------------------------------

def _text(expr: RadicalExpr) -> str:
    if isinstance(expr, IntegerLiteral):
        return str(expr.value)
    if isinstance(expr, RationalScale):
        return f"(1/{expr.denominator})*({_text(expr.child)})"
    if isinstance(expr, RootOfUnitySymbol):
        return f"zeta_{expr.order}^{expr.power}"
    if isinstance(expr, Sum):
        parts = []
        for i, t in enumerate(expr.terms):
            s = _text(t)
            if i == 0:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(f"- {s[1:]}")
            else:
                parts.append(f"+ {s}")
        return " ".join(parts)
    if isinstance(expr, Product):
        parts = []
        for f in expr.factors:
            s = _text(f)
            if isinstance(f, (Sum, RationalScale)) or s.startswith("-"):
                s = f"({s})"
            parts.append(s)
        return "*".join(parts)
    if isinstance(expr, Root):
        return f"root({expr.degree},{expr.branch}; {_text(expr.radicand)})"
    raise TypeError(f"not a radical expression node: {expr!r}")


def _latex(expr: RadicalExpr) -> str:
    if isinstance(expr, IntegerLiteral):
        return str(expr.value)
    if isinstance(expr, RationalScale):
        return rf"\frac{{1}}{{{expr.denominator}}}\left({_latex(expr.child)}\right)"
    if isinstance(expr, RootOfUnitySymbol):
        return rf"\zeta_{{{expr.order}}}^{{{expr.power}}}"
    if isinstance(expr, Sum):
        parts = []
        for i, t in enumerate(expr.terms):
            s = _latex(t)
            if i == 0:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(f"- {s[1:]}")
            else:
                parts.append(f"+ {s}")
        return " ".join(parts)
    if isinstance(expr, Product):
        parts = []
        for f in expr.factors:
            s = _latex(f)
            if isinstance(f, (Sum, RationalScale)) or s.startswith("-"):
                s = rf"\left({s}\right)"
            parts.append(s)
        return r" \cdot ".join(parts)
    if isinstance(expr, Root):
        body = _latex(expr.radicand)
        radical = rf"\sqrt{{{body}}}" if expr.degree == 2 \
            else rf"\sqrt[{expr.degree}]{{{body}}}"
        if expr.degree == 2 and expr.branch == 1:
            return f"-{radical}"
        if expr.branch:
            return rf"\zeta_{{{expr.degree}}}^{{{expr.branch}}}{radical}"
        return radical
    raise TypeError(f"not a radical expression node: {expr!r}")


def _json_obj(expr: RadicalExpr):
    if isinstance(expr, IntegerLiteral):
        return {"int": str(expr.value)}
    if isinstance(expr, RationalScale):
        child_terms = expr.child.terms if isinstance(expr.child, Sum) \
            else (expr.child,)
        return {"scale": f"1/{expr.denominator}",
                "sum": [_json_obj(t) for t in child_terms]}
    if isinstance(expr, RootOfUnitySymbol):
        return {"zeta": {"p": expr.order, "k": expr.power}}
    if isinstance(expr, Sum):
        return {"sum": [_json_obj(t) for t in expr.terms]}
    if isinstance(expr, Product):
        return {"product": [_json_obj(f) for f in expr.factors]}
    if isinstance(expr, Root):
        return {"root": {"p": expr.degree, "branch": expr.branch,
                         "radicand": _json_obj(expr.radicand)}}
    raise TypeError(f"not a radical expression node: {expr!r}")


def emit(expr: RadicalExpr, format: str = "text") -> str:
    """Render an expression as text, LaTeX, or the JSON AST."""
    if format == "text":
        return _text(expr)
    if format == "latex":
        return _latex(expr)
    if format == "json":
        return json.dumps(_json_obj(expr), separators=(",", ":"))
    raise ValueError(f"unknown format {format!r}")


def _from_json_obj(obj) -> RadicalExpr:
    if not isinstance(obj, dict) or not obj:
        raise ValueError(f"bad expression node: {obj!r}")
    if "scale" in obj:
        num, _, den = obj["scale"].partition("/")
        if num != "1":
            raise ValueError(f"scale must be 1/p, got {obj['scale']!r}")
        terms = [_from_json_obj(t) for t in obj["sum"]]
        child = terms[0] if len(terms) == 1 else Sum(tuple(terms))
        return RationalScale(int(den), child)
    if "int" in obj:
        return IntegerLiteral(int(obj["int"]))
    if "sum" in obj:
        terms = [_from_json_obj(t) for t in obj["sum"]]
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))
    if "product" in obj:
        return Product(tuple(_from_json_obj(f) for f in obj["product"]))
    if "zeta" in obj:
        return RootOfUnitySymbol(obj["zeta"]["p"], obj["zeta"]["k"])
    if "root" in obj:
        r = obj["root"]
        return Root(r["p"], _from_json_obj(r["radicand"]), r["branch"])
    raise ValueError(f"unknown expression node keys: {sorted(obj)}")


def parse_expr_json(text: str) -> RadicalExpr:
    return _from_json_obj(json.loads(text))


def verify(exprs, roots: RootSet, digits: int):
    """Re-evaluate each expression and compare to its claimed root.

    Returns the per-root deviations; raises VerificationFailed when any
    deviation reaches 10^(-digits/2).
    """
    if len(exprs) != roots.n:
        raise ValueError("one expression per root is required")
    threshold = mpf(10) ** (-mpf(digits) / 2)
    deviations = []
    for expr, root in zip(exprs, roots.roots):
        deviations.append(evaluate(expr, digits).distance(root))
    worst = max(deviations) if deviations else mpf(0)
    if worst >= threshold:
        raise VerificationFailed(
            f"worst re-evaluation deviation {mpmath.nstr(worst, 4)} exceeds "
            f"10^(-digits/2) = {mpmath.nstr(threshold, 4)}")
    return deviations


@dataclass(frozen=True)
class SolveReport:
    """Everything the pipeline produced for one solved polynomial."""

    polynomial: IntPolynomial
    reduction: MonicReduction
    series: CompositionSeries
    plan: PrecisionPlan
    digits: int
    roots: RootSet                      # labeled order
    labeling: Permutation
    theta: IntegerThetaTensor
    root_exprs: tuple[RadicalExpr, ...]
    theta0_exprs: tuple[RadicalExpr, ...]
    evaluations: tuple[ArbitraryComplex, ...]
    verification: tuple[mpf, ...] | None
    multiplications: int
    budget: int
    branch_log: tuple[BranchChoice, ...]
    zero_notes: tuple[ZeroRadicandNote, ...]
    notes: tuple[str, ...]

    @property
    def max_rounding_residual(self) -> mpf:
        return max(self.theta.residuals) if self.theta.residuals else mpf(0)
