"""L-invariants two ways, the family exponential, and the verification battery."""

from fractions import Fraction

import pytest

from cmlinv.characters import char_from_kronecker
from cmlinv.cmform import cm_spec, cm_spec_from_curve, unit_root
from cmlinv.linvariant import (full_report, hida_ap, l_invariant_analytic,
                               l_invariant_via_alpha, verify_ferrero_greenberg,
                               verify_trivial_zero_formula)
from cmlinv.padic import iwasawa_log, make_context
from cmlinv.quadfield import pi_bar, quad_field_data

CURVE = (0, -1, 0)


def _spec(p=5, N=16):
    return cm_spec_from_curve(CURVE, 1, 32, make_context(p, N))


# --- the analytic value ------------------------------------------------------

def test_analytic_value_and_sign():
    ctx = make_context(5, 16)
    F = quad_field_data(1)
    rep = l_invariant_analytic(F, 5, ctx)
    sp = pi_bar(F, 5, ctx)
    assert (rep.l_at_1 + 2 * sp.log_pibar).is_zero()
    assert (rep.l_at_0 + rep.l_at_1).is_zero()
    # negation is exact at the representation level
    neg = -rep.l_at_1
    assert rep.l_at_0.valuation() == neg.valuation()
    assert rep.l_at_0.unit_int() == neg.unit_int()


def test_analytic_rejects_inert():
    with pytest.raises(ValueError):
        l_invariant_analytic(quad_field_data(1), 3, make_context(3, 12))


def test_via_alpha_matches_analytic_weight_two():
    for p in (5, 13):
        spec = _spec(p)
        base = l_invariant_analytic(spec.field, p, spec.context)
        via = l_invariant_via_alpha(spec)
        assert (via - base.l_at_1).min_valuation() >= 14, p


def test_via_alpha_weight_independence():
    # the weight-3 sibling built from squared roots gives the same constant
    ctx = make_context(5, 16)
    spec2 = cm_spec_from_curve(CURVE, 1, 32, ctx)
    roots = unit_root(spec2)
    spec3 = cm_spec(spec2.field, 3, char_from_kronecker(-4),
                    roots.alpha**2 + roots.beta**2, 32, ctx)
    v2 = l_invariant_via_alpha(spec2)
    v3 = l_invariant_via_alpha(spec3)
    assert (v2 - v3).min_valuation() >= 14


def test_full_report_agreement():
    rep = full_report(_spec(13, 16), target=6)
    assert rep.agreement_valuation >= 14
    assert rep.fg_check.passed
    assert rep.l_via_alpha is not None


def test_arithmetic_readings_alias_the_analytic_value():
    rep = full_report(_spec(), target=6)
    assert rep.greenberg_l_invariant is rep.l_at_1
    assert rep.gross_regulator is rep.l_at_1


# --- the family exponential -----------------------------------------------------

def test_hida_at_one():
    ctx = make_context(5, 16)
    assert hida_ap(1, quad_field_data(1), 5, ctx) == 1


def test_hida_log_at_two_is_log_alpha():
    # weight-2 member: the p-th coefficient of the stabilized form is alpha
    ctx = make_context(5, 16)
    F = quad_field_data(1)
    spec = cm_spec_from_curve(CURVE, 1, 32, ctx)
    a2 = hida_ap(2, F, 5, ctx)
    la = iwasawa_log(unit_root(spec).alpha)
    assert (iwasawa_log(a2) - la).min_valuation() >= 14


def test_hida_log_linear_in_s():
    ctx = make_context(5, 16)
    F = quad_field_data(1)
    sp = pi_bar(F, 5, ctx)
    for s in (0, 3, 10):
        val = iwasawa_log(hida_ap(s, F, 5, ctx))
        expected = (s - 1) * sp.log_pibar / F.h
        assert (val - expected).min_valuation() >= 14, s


def test_hida_rejects_s_outside_zp():
    ctx = make_context(5, 16)
    with pytest.raises(ValueError):
        hida_ap(Fraction(1, 5), quad_field_data(1), 5, ctx)


# --- Ferrero-Greenberg check ------------------------------------------------------

def test_fg_gaussian_pair():
    chk = verify_ferrero_greenberg(quad_field_data(1), 5, make_context(5, 12))
    assert chk.passed and chk.residual_valuation >= 6


def test_fg_eisenstein_pair_w_six():
    ctx = make_context(7, 12)
    F = quad_field_data(3)
    chk = verify_ferrero_greenberg(F, 7, ctx)
    assert F.w == 6
    assert chk.passed
    sp = pi_bar(F, 7, ctx)
    assert (chk.rhs - ctx.from_rational(Fraction(4, 6)) * sp.log_pibar).is_zero()


def test_fg_rejects_inert():
    with pytest.raises(ValueError):
        verify_ferrero_greenberg(quad_field_data(1), 3, make_context(3, 12))


def test_fg_higher_class_numbers():
    # pibar generates the h-th power of the prime; h = 2, 3, 5 here
    for (d, p, h) in ((15, 17, 2), (23, 3, 3), (47, 7, 5)):
        F = quad_field_data(d)
        assert F.h == h
        chk = verify_ferrero_greenberg(F, p, make_context(p, 12), target=6)
        assert chk.passed, (d, p)


def test_fg_sweep_all_split_pairs():
    # every split (D, p) with |D| <= 40, p <= 13: the identity holds at
    # the full certified precision, whatever the class number
    from cmlinv.characters import is_fundamental_discriminant
    from cmlinv.quadfield import quad_field_from_discriminant, split_behavior
    checked = 0
    for D in range(-3, -41, -1):
        if not is_fundamental_discriminant(D):
            continue
        F = quad_field_from_discriminant(D)
        for p in (3, 5, 7, 11, 13):
            if split_behavior(F, p) != "split":
                continue
            chk = verify_ferrero_greenberg(F, p, make_context(p, 10), target=6)
            assert chk.passed and chk.residual_valuation >= 10, (D, p)
            checked += 1
    assert checked >= 25


def test_fg_residual_scales_with_context():
    residuals = []
    for N in (8, 12, 16):
        chk = verify_ferrero_greenberg(quad_field_data(1), 5, make_context(5, N))
        residuals.append(chk.residual_valuation)
    assert residuals == [8, 12, 16]


# --- the derivative formula at a trivial zero ----------------------------------------

def test_formula_branch_zero():
    r = verify_trivial_zero_formula(_spec(), 2, 0)
    assert r.passed and r.residual_valuation >= 6
    assert r.archimedean_value == Fraction(1, 2)  # 2h/w for Q(i)
    assert r.modular_symbols == ("Lp[branch 0](1, f_1)",)
    assert r.functional_equation_note is None
    assert not r.e_plus_value.is_zero()


def test_formula_branch_one_functional_equation():
    r = verify_trivial_zero_formula(_spec(), 2, 1)
    assert r.passed
    assert r.functional_equation_note is not None


def test_formula_larger_power_same_core():
    r2 = verify_trivial_zero_formula(_spec(), 2, 0)
    r6 = verify_trivial_zero_formula(_spec(), 6, 0)
    assert r6.passed
    assert len(r6.modular_symbols) == 3
    assert (r2.l_invariant - r6.l_invariant).is_zero()
    assert (r2.derivative - r6.derivative).is_zero()


def test_formula_rejects_non_exceptional():
    with pytest.raises(ValueError):
        verify_trivial_zero_formula(_spec(), 4, 0)
    with pytest.raises(ValueError):
        verify_trivial_zero_formula(_spec(), 2, 2)


def test_invariance_under_conjugate_lift():
    for conj in (False, True):
        rep = full_report(_spec(), target=6, conjugate_lift=conj)
        assert rep.fg_check.passed
        assert rep.agreement_valuation >= 6
    a = full_report(_spec(), target=6, conjugate_lift=False)
    b = full_report(_spec(), target=6, conjugate_lift=True)
    assert (a.l_at_1 - b.l_at_1).is_zero()
