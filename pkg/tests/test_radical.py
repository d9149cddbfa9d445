import pytest
from mpmath import mpf

from radicalroots import (PhaseAmbiguous, VerificationFailed, closure,
                          composition_series, emit, evaluate, find_roots,
                          label_roots, parse_cycles, parse_expr_json,
                          parse_polynomial, reconstruct, solve, verify)
from radicalroots.precision import make_complex
from radicalroots.radical import (IntegerLiteral, Product, RationalScale, Root,
                                  RootOfUnitySymbol, Sum, make_product,
                                  make_root, make_scale, make_sum)
from radicalroots.resolvent import (MultiplicationCounter, build_theta0,
                                    forward_pass, multiplication_budget,
                                    round_theta_m, zeta_tables)
from radicalroots.rootfinder import relabel
from tests.conftest import QUINTIC_ROOT_STRINGS


def run_backward(poly_text, gens_text, digits=None):
    p = parse_polynomial(poly_text)
    gens = [parse_cycles(t, p.degree) for t in gens_text.split(";")]
    G = closure(gens, p.degree)
    series = composition_series(G)
    if digits is None:
        from radicalroots import plan_precision, root_magnitude_bound
        coarse = find_roots(p, 32)
        digits = plan_precision(series, root_magnitude_bound(coarse), 6).digits
    roots = find_roots(p, digits)
    labeled = label_roots(G, roots).labeled
    zetas = zeta_tables(series, digits)
    theta0 = build_theta0(labeled, series)
    fwd = forward_pass(theta0, series, zetas,
                       MultiplicationCounter(budget=multiplication_budget(series)))
    ints = round_theta_m(fwd.thetas[-1])
    recon = reconstruct(series, ints, fwd.resolvents, zetas, digits=digits)
    return series, zetas, theta0, fwd, ints, recon, labeled, digits


def test_sqrt2_reconstruction():
    series, zetas, theta0, fwd, ints, recon, labeled, digits = \
        run_backward("x^2-2", "(1,2)")
    assert ints.values == (4, -4)
    # E_0 = 4 + (-4) = 0 drops out; E_1 = 8 survives as a square root
    positive = recon.root_exprs[0]
    assert positive == RationalScale(2, Root(2, IntegerLiteral(8), 0))
    assert emit(positive) == "(1/2)*(root(2,0; 8))"
    val = evaluate(positive, 14)
    assert val.re_string() == "1.4142135623731"
    assert recon.zero_notes  # the vanished resolvent is recorded


def test_x3_minus_2_reconstruction():
    series, zetas, theta0, fwd, ints, recon, labeled, digits = \
        run_backward("x^3-2", "(1,2,3);(1,2)")
    assert ints.radices == (3, 2)
    assert ints.values == (648, 648, -324, 648, -324, 648)
    # level-2 line j1=1: radicands 324 and -972, branch of sqrt(324) is 1
    choices = {(b.level, b.flat_index): b for b in recon.branch_log}
    assert choices[(2, 2)].degree == 2 and choices[(2, 2)].branch == 1
    # every root re-evaluates onto its numeric value
    for expr, root in zip(recon.root_exprs, labeled.roots):
        assert evaluate(expr, digits).distance(root) < mpf(10) ** (-digits // 2)


def test_quintic_reconstruction_matches_13_decimals(reference_label_order):
    report = solve("x^5+20x+32", "(1,2,3,4,5);(1,4)(2,3)",
                   labeling=reference_label_order)
    for (re_s, im_s), expr in zip(QUINTIC_ROOT_STRINGS, report.root_exprs):
        target = make_complex(re_s, im_s, 20)
        assert evaluate(expr, report.digits).distance(target) < mpf("1e-13")


def test_reconstruct_phase_ambiguous_on_corrupted_resolvents():
    series, zetas, theta0, fwd, ints, recon, labeled, digits = \
        run_backward("x^3-2", "(1,2,3);(1,2)")
    # rotate the stored level-2 resolvents so no branch matches
    from radicalroots.resolvent import ResolventTensor
    bad_value = make_complex("1", "1", digits)
    corrupted = ResolventTensor(
        fwd.resolvents[1].radices,
        tuple(v * bad_value for v in fwd.resolvents[1].data),
        fwd.resolvents[1].level, "L")
    with pytest.raises(PhaseAmbiguous):
        reconstruct(series, ints, (fwd.resolvents[0], corrupted), zetas,
                    digits=digits)


def test_evaluate_examples():
    assert evaluate(Root(2, IntegerLiteral(8), 0), 14).re_string() == \
        "2.8284271247462"
    one = evaluate(RootOfUnitySymbol(5, 0), 12)
    assert one.re == 1 and one.im == 0
    half_sum = RationalScale(2, Root(2, IntegerLiteral(8), 0))
    assert evaluate(half_sum, 14).re_string() == "1.4142135623731"


def test_evaluate_deterministic():
    expr = Root(5, Sum((IntegerLiteral(7),
                        Product((RootOfUnitySymbol(5, 2),
                                 Root(2, IntegerLiteral(-45000000), 1))))), 3)
    a = evaluate(expr, 25)
    b = evaluate(expr, 25)
    assert a.re == b.re and a.im == b.im


def test_simplification_rules():
    assert make_sum([IntegerLiteral(4), IntegerLiteral(4)]) == IntegerLiteral(8)
    assert make_sum([IntegerLiteral(0)]) == IntegerLiteral(0)
    assert make_product([IntegerLiteral(-1), IntegerLiteral(648)]) == \
        IntegerLiteral(-648)
    assert make_product([RootOfUnitySymbol(3, 1), RootOfUnitySymbol(3, 2)]) == \
        IntegerLiteral(1)
    assert make_root(2, IntegerLiteral(0), 1) == IntegerLiteral(0)
    assert make_scale(2, IntegerLiteral(8)) == IntegerLiteral(4)
    r = Root(2, IntegerLiteral(8), 0)
    assert make_scale(2, r) == RationalScale(2, r)
    assert make_product([IntegerLiteral(1), r]) == r
    assert make_product([IntegerLiteral(0), r]) == IntegerLiteral(0)
    # sign and zeta weights merge into branch tags of matching roots
    assert make_product([IntegerLiteral(-1), r]) == Root(2, IntegerLiteral(8), 1)
    r5 = Root(5, IntegerLiteral(3), 4)
    assert make_product([RootOfUnitySymbol(5, 2), r5]) == \
        Root(5, IntegerLiteral(3), 1)


def test_emit_formats_reference_strings():
    expr = RationalScale(2, Root(2, IntegerLiteral(8), 0))
    assert emit(expr, "text") == "(1/2)*(root(2,0; 8))"
    assert emit(expr, "latex") == r"\frac{1}{2}\left(\sqrt{8}\right)"
    assert emit(expr, "json") == \
        '{"scale":"1/2","sum":[{"root":{"p":2,"branch":0,"radicand":{"int":"8"}}}]}'


def test_emit_zeta_and_branch():
    expr = Product((RootOfUnitySymbol(5, 2), Root(5, IntegerLiteral(3), 4)))
    assert emit(expr, "text") == "zeta_5^2*root(5,4; 3)"
    assert emit(expr, "latex") == \
        r"\zeta_{5}^{2} \cdot \zeta_{5}^{4}\sqrt[5]{3}"


def test_json_round_trip_handmade():
    exprs = [
        IntegerLiteral(-45000000),
        RationalScale(2, Root(2, IntegerLiteral(8), 0)),
        RationalScale(5, Sum((IntegerLiteral(3),
                              Product((RootOfUnitySymbol(5, 1),
                                       Root(5, IntegerLiteral(7), 2)))))),
        Sum((IntegerLiteral(1), RootOfUnitySymbol(3, 2))),
    ]
    for expr in exprs:
        assert parse_expr_json(emit(expr, "json")) == expr


def test_json_round_trip_pipeline(reference_label_order):
    report = solve("x^5+20x+32", "(1,2,3,4,5);(1,4)(2,3)",
                   labeling=reference_label_order)
    for expr in report.root_exprs:
        assert parse_expr_json(emit(expr, "json")) == expr


def test_verify_accepts_and_rejects():
    series, zetas, theta0, fwd, ints, recon, labeled, digits = \
        run_backward("x^2-2", "(1,2)")
    deviations = verify(recon.root_exprs, labeled, 14)
    assert max(deviations) < mpf(10) ** -7
    with pytest.raises(VerificationFailed):
        verify(tuple(reversed(recon.root_exprs)), labeled, 14)


def test_verify_zero_expression():
    roots = find_roots(parse_polynomial("x"), 10)
    deviations = verify((IntegerLiteral(0),), roots, 10)
    assert deviations[0] == 0


def test_round_trip_theta0_every_position(reference_label_order):
    series, zetas, theta0, fwd, ints, recon, labeled, digits = \
        run_backward("x^3-2", "(1,2,3);(1,2)")
    tol = mpf(10) ** (-mpf(digits) / 2)
    for expr, fwd_value in zip(recon.theta0_exprs, theta0.data):
        assert evaluate(expr, digits).distance(fwd_value) < tol
