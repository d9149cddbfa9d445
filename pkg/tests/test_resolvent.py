import pytest
from mpmath import mpf

from radicalroots import (PrecisionInfeasible, ResidualTooLarge, closure,
                          composition_series, find_roots, label_roots,
                          parse_cycles, parse_polynomial, plan_precision,
                          build_theta0, forward_pass, forward_level,
                          round_theta_m)
from radicalroots.precision import ArbitraryComplex, make_complex
from radicalroots.resolvent import (MultiplicationCounter, ResolventTensor,
                                    cyclic_shift, multiplication_budget,
                                    position_root_indices, zeta_tables)
from tests.conftest import QUINTIC_THETA


def c2_series():
    G = closure([parse_cycles("(1,2)", 2)])
    return composition_series(G)


def quintic_forward(reference_label_order, digits=19):
    p = parse_polynomial("x^5+20x+32")
    G = closure([parse_cycles("(1,2,3,4,5)", 5), parse_cycles("(1,4)(2,3)", 5)])
    series = composition_series(G)
    roots = find_roots(p, digits)
    from radicalroots import Permutation
    from radicalroots.rootfinder import relabel
    labeled = relabel(roots, Permutation(tuple(reference_label_order)))
    zetas = zeta_tables(series, digits)
    theta0 = build_theta0(labeled, series)
    counter = MultiplicationCounter(budget=multiplication_budget(series))
    fwd = forward_pass(theta0, series, zetas, counter)
    return series, zetas, theta0, fwd


def sqrt2_forward(digits=14):
    series = c2_series()
    roots = find_roots(parse_polynomial("x^2-2"), digits)
    labeled = label_roots(series.group, roots).labeled
    zetas = zeta_tables(series, digits)
    theta0 = build_theta0(labeled, series)
    fwd = forward_pass(theta0, series, zetas)
    return series, zetas, theta0, fwd


def test_plan_precision_quintic(d5):
    series = composition_series(d5)
    plan = plan_precision(series, 2.4, 1)
    assert plan.n_bound == 5**10 * 2**2
    assert plan.required_digits == 13
    assert plan.digits == 14


def test_plan_precision_c2_examples():
    series = c2_series()
    plan = plan_precision(series, 1.5, 2)
    assert plan.n_bound == 4
    assert plan.digits == 4
    plan = plan_precision(series, 1, 0)
    assert plan.digits == 2


def test_plan_precision_cap():
    series = c2_series()
    with pytest.raises(PrecisionInfeasible):
        plan_precision(series, 1.5, 2, digits_cap=3)


def test_build_theta0_quintic_position_map(d5):
    # column j2=0 walks the 5-cycle; column j2=1 applies the reflection
    series = composition_series(d5)
    indices = position_root_indices(series)
    assert indices == [1, 4, 2, 3, 3, 2, 4, 1, 5, 5]


def test_build_theta0_sqrt2():
    _, _, theta0, _ = sqrt2_forward()
    a, b = theta0.data
    assert a.distance(make_complex("1.4142135623731", "0", 14)) < mpf("1e-12")
    assert b.distance(make_complex("-1.4142135623731", "0", 14)) < mpf("1e-12")


def test_build_theta0_trivial_group():
    from radicalroots import Permutation
    G = closure([Permutation.identity(1)])
    series = composition_series(G)
    roots = find_roots(parse_polynomial("x+3"), 12)
    theta0 = build_theta0(roots, series)
    assert theta0.size == 1
    assert theta0.data[0].re == -3


def test_build_theta0_rejects_intransitive():
    # C2 acting on only 2 of 3 labels cannot cover a cubic's roots
    G = closure([parse_cycles("(1,2)", 3)])
    series = composition_series(G)
    roots = find_roots(parse_polynomial("x^3-2"), 12)
    with pytest.raises(ValueError):
        build_theta0(roots, series)


def test_forward_level_sqrt2():
    series, zetas, theta0, fwd = sqrt2_forward()
    L0, theta1 = fwd.resolvents[0], fwd.thetas[1]
    # L0 = [x1 + x2, x1 - x2] = [0, 2*sqrt(2)]
    assert L0.data[0].magnitude() < mpf("1e-12")
    assert L0.data[1].distance(make_complex("2.8284271247462", "0", 14)) < mpf("1e-11")
    ints = round_theta_m(theta1)
    assert ints.values == (4, -4)


def test_forward_constant_axis_kills_nonzero_modes():
    # constant data along the axis: geometric sums of zeta vanish off k=0
    series = c2_series()
    digits = 16
    zetas = zeta_tables(series, digits)
    val = make_complex("1.25", "0.5", digits)
    tensor = ResolventTensor((2,), (val, val), 0, "theta")
    L, _ = forward_level(tensor, 1, zetas)
    assert L.data[0].distance(val.scaled_by_int(2)) < mpf(10) ** (3 - digits)
    assert L.data[1].magnitude() < mpf(10) ** (3 - digits)


def test_quintic_theta2_values(reference_label_order):
    series, zetas, theta0, fwd = quintic_forward(reference_label_order)
    theta2 = fwd.thetas[2]
    # displayed value: Theta_2[1,1] = 34999999.999995  (14 significant digits)
    entry = theta2.data[1 * 2 + 1]
    assert abs(entry.re - 35000000) < mpf("1e-4")
    assert abs(entry.im) < mpf("1e-4")
    ints = round_theta_m(theta2)
    assert ints.values == QUINTIC_THETA
    assert max(ints.residuals) < mpf("1e-4")


def test_multiplication_counter_budget_exact(reference_label_order):
    series, _, _, fwd = quintic_forward(reference_label_order)
    assert fwd.counter.budget == 190  # 10 * (14 + 5)
    assert fwd.counter.count == 190
    assert fwd.counter.within_budget


def test_round_theta_m_rejects_offset():
    bad = ResolventTensor((2,), (make_complex("0.4", "0", 12),
                                 make_complex("1", "0", 12)), 1, "theta")
    with pytest.raises(ResidualTooLarge):
        round_theta_m(bad, tolerance=0.25)


def test_fourier_inversion_identity(reference_label_order):
    series, zetas, theta0, fwd = quintic_forward(reference_label_order)
    digits = theta0.digits
    for level in range(1, series.length + 1):
        p = series.primes[level - 1]
        prev = fwd.thetas[level - 1]
        L = fwd.resolvents[level - 1]
        table = zetas[p]
        scale = max(e.magnitude() for e in prev.data)
        tol = mpf(10) ** (3 - digits) * max(mpf(1), scale)
        for line in prev.axis_lines(level - 1):
            for j in range(p):
                acc = ArbitraryComplex.zero(digits)
                for k in range(p):
                    acc = acc + table[(-j * k) % p].value * L.data[line[k]]
                acc = acc.divided_by_int(p)
                assert acc.distance(prev.data[line[j]]) < tol


def test_cyclic_shift_invariance(reference_label_order):
    # shifting axis i of Theta_{i-1} rephases L but leaves L^p and Theta_i alone
    series, zetas, theta0, fwd = quintic_forward(reference_label_order)
    digits = theta0.digits
    for level in range(1, series.length + 1):
        p = series.primes[level - 1]
        prev = fwd.thetas[level - 1]
        shifted = cyclic_shift(prev, level)
        _, theta_shifted = forward_level(shifted, level, zetas)
        ref = fwd.thetas[level]
        scale = max(mpf(1), max(e.magnitude() for e in ref.data))
        tol = mpf(10) ** (3 - digits) * scale
        for a, b in zip(theta_shifted.data, ref.data):
            assert a.distance(b) < tol


def test_primitive_root_exchange_law(reference_label_order):
    # resolvents formed with zeta^k: Theta entries reindex by the inverse of k
    series, zetas, theta0, fwd = quintic_forward(reference_label_order)
    digits = theta0.digits
    level, p = 1, 5
    prev = fwd.thetas[0]
    ref = fwd.thetas[1]
    for k in range(2, p):
        t = pow(k, -1, p)
        _, exchanged = forward_level(prev, level, zetas, analysis_root_power=k)
        scale = max(mpf(1), max(e.magnitude() for e in ref.data))
        tol = mpf(10) ** (3 - digits) * scale
        for line in prev.axis_lines(level - 1):
            for j in range(p):
                got = exchanged.data[line[j]]
                expected = ref.data[line[(t * j) % p]]
                assert got.distance(expected) < tol
