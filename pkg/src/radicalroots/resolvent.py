"""Forward pass: the resolvent tensor transforms and precision planning.

The mixed-radix tensor over indices (j_1, ..., j_m) with radices (p_1, ..., p_m)
is stored flat in row-major order (j_1 slowest).  Level i transforms act along
axis i: a weighted Fourier sum produces the resolvent array L_{i-1}, whose
entrywise p_i-th powers are Fourier-inverted into the next invariant array
Theta_i.  After level m every entry is (numerically) a rational integer.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import PrecisionInfeasible, ResidualTooLarge
from .groups import CompositionSeries, Permutation
from .precision import ArbitraryComplex, RootOfUnityValue, nearest_integer
from .rootfinder import RootSet

__all__ = [
    "ResolventTensor",
    "PrecisionPlan",
    "MultiplicationCounter",
    "IntegerThetaTensor",
    "ForwardResult",
    "axis_lines",
    "plan_precision",
    "build_theta0",
    "forward_level",
    "forward_pass",
    "round_theta_m",
    "cyclic_shift",
    "position_root_indices",
    "zeta_tables",
    "multiplication_budget",
]

DEFAULT_ROUNDING_TOLERANCE = 0.25
DIGITS_HARD_CAP = 10**5


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def axis_lines(radices: tuple[int, ...], axis: int):
    """Flat index lists of all lines along one axis of a row-major tensor."""
    stride = _prod(radices[axis + 1:])
    p = radices[axis]
    block = stride * p
    for start in range(0, _prod(radices), block):
        for off in range(stride):
            base = start + off
            yield [base + j * stride for j in range(p)]


@dataclass(frozen=True)
class ResolventTensor:
    """Mixed-radix array of complex values with a shared digit budget."""

    radices: tuple[int, ...]
    data: tuple[ArbitraryComplex, ...]
    level: int
    kind: str  # "theta" or "L"

    def __post_init__(self):
        if len(self.data) != _prod(self.radices):
            raise ValueError("tensor data length does not match radices")
        budgets = {v.digits for v in self.data}
        if len(budgets) > 1:
            raise ValueError("tensor entries have mixed digit budgets")

    @property
    def size(self) -> int:
        return len(self.data)

    @property
    def digits(self) -> int:
        return self.data[0].digits

    def axis_lines(self, axis: int):
        """Yield the flat index lists of all lines along the given axis."""
        return axis_lines(self.radices, axis)

    def value_strings(self) -> list[tuple[str, str]]:
        return [(v.re_string(), v.im_string()) for v in self.data]


@dataclass(frozen=True)
class PrecisionPlan:
    """Digit budget derived from the coefficient-sum bound of the final level."""

    n_bound: int
    group_order: int
    x0_bound: float
    required_digits: int
    margin: int
    digits: int


@dataclass
class MultiplicationCounter:
    """Tally of complex multiplications in the forward pass."""

    budget: int
    count: int = 0

    def add(self, n: int) -> None:
        self.count += n

    @property
    def within_budget(self) -> bool:
        return self.count <= self.budget


@dataclass(frozen=True)
class IntegerThetaTensor:
    """Final-level tensor rounded to exact integers, with rounding residuals."""

    radices: tuple[int, ...]
    values: tuple[int, ...]
    residuals: tuple[mpf, ...]

    @property
    def size(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ForwardResult:
    thetas: tuple[ResolventTensor, ...]       # levels 0..m
    resolvents: tuple[ResolventTensor, ...]   # L_0..L_{m-1}
    counter: MultiplicationCounter


def multiplication_budget(series: CompositionSeries) -> int:
    """|G| * sum_i (3 p_i - 1), the forward-pass multiplication cap."""
    return series.order * sum(3 * p - 1 for p in series.primes)


def plan_precision(series: CompositionSeries, x0_bound,
                   margin: int, digits_cap: int = DIGITS_HARD_CAP) -> PrecisionPlan:
    """Digit budget: ceil(log10(2 * N * |G| * x0^(|G|-1))) + margin.

    N bounds the coefficient sum of any final-level invariant:
    N = prod_i p_i^(p_i * p_{i+1} * ... * p_m).
    """
    if margin < 0:
        raise ValueError("margin must be >= 0")
    primes = series.primes
    n_bound = 1
    for i, p in enumerate(primes):
        n_bound *= p ** _prod(primes[i:])
    order = series.order
    with mp.workdps(50):
        v = mpmath.log10(mpf(2) * n_bound * order)
        v += (order - 1) * mpmath.log10(mpf(x0_bound))
        required = int(mpmath.ceil(v - mpf(10) ** (-30)))
    required = max(required, 1)
    digits = required + margin
    if digits > digits_cap:
        raise PrecisionInfeasible(
            f"required digit budget {digits} exceeds cap {digits_cap}")
    return PrecisionPlan(n_bound, order, float(x0_bound), required, margin, digits)


def position_root_indices(series: CompositionSeries) -> list[int]:
    """Root label at each flat tensor position: (sigma_m^{j_m}...sigma_1^{j_1})(1)."""
    degree = series.degree
    radices = series.primes
    sigma_powers = [[sigma.power(j) for j in range(p)]
                    for sigma, p in series.steps]
    out = []
    size = _prod(radices)
    for flat in range(size):
        rem, multi = flat, []
        for p in reversed(radices):
            multi.append(rem % p)
            rem //= p
        multi.reverse()
        perm = Permutation.identity(degree)
        for level, j in enumerate(multi):
            perm = sigma_powers[level][j] * perm
        out.append(perm(1))
    return out


def build_theta0(roots: RootSet, series: CompositionSeries) -> ResolventTensor:
    """Theta_0[j_1..j_m] = the labeled root moved by sigma_m^{j_m}...sigma_1^{j_1}.

    Requires the labeling to be consistent with the group's permutation
    action; transitivity means every root label must appear.
    """
    if roots.n != series.degree:
        raise ValueError("root count does not match the group degree")
    indices = position_root_indices(series)
    if set(indices) != set(range(1, roots.n + 1)):
        raise ValueError(
            "tensor positions do not cover all roots; the group is not "
            "transitive on the labels (wrong group or labeling?)")
    data = tuple(roots.roots[i - 1] for i in indices)
    return ResolventTensor(series.primes, data, 0, "theta")


def zeta_tables(series: CompositionSeries, digits: int):
    """All powers of each primitive p-th root of unity used by the series."""
    from .precision import root_of_unity
    tables: dict[int, list[RootOfUnityValue]] = {}
    for p in set(series.primes):
        tables[p] = [root_of_unity(p, k, digits) for k in range(p)]
    return tables


def forward_level(theta_prev: ResolventTensor, level: int, zetas,
                  counter: MultiplicationCounter | None = None, *,
                  analysis_root_power: int = 1):
    """One transform level: resolvent sums, p-th powers, coefficient extraction.

    Returns (L_{level-1}, Theta_level).  The counter is incremented by exactly
    the complex multiplications performed: p per L entry, p-1 per power,
    p per Theta entry.

    ``analysis_root_power`` forms the resolvent sums with zeta^k instead of
    zeta while extraction keeps the reference root; the output is then the
    standard tensor with axis ``level`` reindexed by the modular inverse of k.
    """
    p = theta_prev.radices[level - 1]
    axis = level - 1
    a = analysis_root_power % p
    if a == 0:
        raise ValueError("analysis root power must be nonzero mod p")
    if counter is None:
        counter = MultiplicationCounter(budget=0)
    table = zetas[p]
    ldata: list = [None] * theta_prev.size
    tdata: list = [None] * theta_prev.size
    for line in theta_prev.axis_lines(axis):
        entries = [theta_prev.data[i] for i in line]
        powered = []
        for k in range(p):
            acc = None
            for j in range(p):
                term = table[(a * j * k) % p].value * entries[j]
                acc = term if acc is None else acc + term
            counter.add(p)
            ldata[line[k]] = acc
            w = acc
            for _ in range(p - 1):
                w = w * acc
            counter.add(p - 1)
            powered.append(w)
        for j in range(p):
            acc = None
            for k in range(p):
                term = table[(-k * j) % p].value * powered[k]
                acc = term if acc is None else acc + term
            counter.add(p)
            tdata[line[j]] = acc.divided_by_int(p)
    L = ResolventTensor(theta_prev.radices, tuple(ldata), level - 1, "L")
    theta_next = ResolventTensor(theta_prev.radices, tuple(tdata), level, "theta")
    return L, theta_next


def forward_pass(theta0: ResolventTensor, series: CompositionSeries, zetas,
                 counter: MultiplicationCounter | None = None) -> ForwardResult:
    """Run all m levels, retaining every Theta and L tensor."""
    if counter is None:
        counter = MultiplicationCounter(budget=multiplication_budget(series))
    thetas = [theta0]
    resolvents = []
    current = theta0
    for level in range(1, series.length + 1):
        L, current = forward_level(current, level, zetas, counter)
        resolvents.append(L)
        thetas.append(current)
    return ForwardResult(tuple(thetas), tuple(resolvents), counter)


def round_theta_m(theta_m: ResolventTensor,
                  tolerance: float = DEFAULT_ROUNDING_TOLERANCE) -> IntegerThetaTensor:
    """Round every final-level entry to the nearest integer.

    Raises ResidualTooLarge when any entry is farther than the tolerance from
    an integer: insufficient precision, a wrong group, a wrong labeling, or a
    non-irreducible input polynomial.
    """
    values, residuals = [], []
    for flat, entry in enumerate(theta_m.data):
        n, res = nearest_integer(entry)
        if res >= tolerance:
            raise ResidualTooLarge(
                f"entry {flat} of the final tensor is {mpmath.nstr(res, 4)} away "
                f"from an integer (tolerance {tolerance}); raise the digit "
                "budget, or check the group, the labeling, and irreducibility",
                position=flat, residual=res)
        values.append(n)
        residuals.append(res)
    return IntegerThetaTensor(theta_m.radices, tuple(values), tuple(residuals))


def cyclic_shift(tensor: ResolventTensor, level: int, offset: int = 1) -> ResolventTensor:
    """Shift entries cyclically along the given 1-based level axis."""
    axis = level - 1
    p = tensor.radices[axis]
    data = list(tensor.data)
    for line in tensor.axis_lines(axis):
        for j, flat in enumerate(line):
            data[flat] = tensor.data[line[(j + offset) % p]]
    return ResolventTensor(tensor.radices, tuple(data), tensor.level, tensor.kind)
