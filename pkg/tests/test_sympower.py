"""Decomposition, critical sets, trivial-zero prediction, interpolation product."""

import pytest

from cmlinv.characters import char_from_kronecker
from cmlinv.cmform import cm_spec, cm_spec_from_curve, unit_root
from cmlinv.padic import make_context
from cmlinv.quadfield import quad_field_data
from cmlinv.sympower import (critical_integers, decompose, e_plus,
                             inspect_interpolation_factors,
                             trivial_zero_locations)

CURVE = (0, -1, 0)


def _spec5(N=16):
    return cm_spec_from_curve(CURVE, 1, 32, make_context(5, N))


# --- decomposition ---------------------------------------------------------------

def test_sym2_factor_list():
    spec = _spec5()
    dec = decompose(spec, 2)
    assert dec.m == 1 and len(dec.factors) == 2
    dirichlet = dec.dirichlet_factor()
    assert dirichlet.character.conductor() == 4 and dirichlet.character.is_odd()
    mod = [f for f in dec.factors if f.kind == "modular"][0]
    assert mod.weight == 3 and mod.shift == 1 and mod.j == 1
    alpha = unit_root(spec).alpha
    assert (mod.alpha - alpha**2).is_zero()
    assert (mod.beta * mod.alpha - 5**2).is_zero()


def test_odd_power_has_no_dirichlet_factor():
    spec = _spec5()
    assert decompose(spec, 3).dirichlet_factor() is None
    assert decompose(spec, 7).dirichlet_factor() is None


def test_even_power_factor_count():
    spec = _spec5()
    for n in (2, 4, 6, 8):
        dec = decompose(spec, n)
        assert len(dec.factors) == n // 2 + 1, n


def test_m_three_keeps_theta():
    dec = decompose(_spec5(), 6)
    assert dec.dirichlet_factor().character.is_odd()


def test_m_even_dirichlet_factor_trivial():
    dec = decompose(_spec5(), 4)
    assert dec.dirichlet_factor().character.is_trivial()


def test_frobenius_eigenvalue_oracle():
    # brute force: alpha^(n-r) beta^r (psi(p) p^(k-1))^(-m), r = 0..n
    spec = _spec5()
    roots = unit_root(spec)
    ctx = spec.context
    for n in (2, 3, 4, 6):
        m = n // 2
        dec = decompose(spec, n)
        got = dec.frobenius_eigenvalues()
        expected = [roots.alpha ** (n - r) * roots.beta**r
                    * ctx.from_int(5) ** (-m * (spec.weight - 1))
                    for r in range(n + 1)]
        assert len(got) == len(expected)
        # compare as multisets at 10 digits
        def key(x):
            return (x.valuation(), (x / ctx.from_int(5) ** x.valuation()).residue(10))
        assert sorted(map(key, got)) == sorted(map(key, expected)), n


def test_weight3_synthetic_decomposition():
    ctx = make_context(5, 16)
    base = unit_root(cm_spec_from_curve(CURVE, 1, 32, ctx))
    spec3 = cm_spec(quad_field_data(1), 3, char_from_kronecker(-4),
                    base.alpha**2 + base.beta**2, 32, ctx)
    dec = decompose(spec3, 2)
    mod = [f for f in dec.factors if f.kind == "modular"][0]
    assert mod.weight == 5 and mod.shift == 2
    # twist for j=1 at k=3: psi^(-1) theta^0 = theta (psi = theta quadratic)
    assert mod.twist.conductor() == 4


# --- critical integers ---------------------------------------------------------------

def test_critical_basic_cases():
    assert critical_integers(2, 2) == [0, 1]
    # the displayed left endpoint -(k-1) fails the weight-3 factor's strip;
    # the Hodge-correct set drops it (see the decisions ledger)
    assert critical_integers(2, 3) == [0, 1]
    assert critical_integers(4, 4) == [-1, 2]
    assert critical_integers(2, 5) == [-2, 0, 1, 3]
    assert critical_integers(2, 8) == [-6, -4, -2, 0, 1, 3, 5, 7]


def test_critical_rejects_odd_n():
    with pytest.raises(ValueError):
        critical_integers(3, 4)
    with pytest.raises(ValueError):
        critical_integers(1, 2)


def test_critical_functional_equation_symmetry():
    for n in (2, 4, 6, 8, 10):
        for k in range(2, 9):
            C = critical_integers(n, k)
            assert sorted(1 - a for a in C) == C, (n, k)


def test_critical_containment_all_factors():
    for n in (2, 4, 6, 8, 10):
        m = n // 2
        for k in range(2, 9):
            for a in critical_integers(n, k):
                for j in range(1, m + 1):
                    assert 1 <= a + j * (k - 1) <= 2 * j * (k - 1), (n, k, a, j)
                if m % 2:
                    assert (a > 0 and a % 2) or (a <= 0 and a % 2 == 0)
                else:
                    assert (a > 0 and a % 2 == 0) or (a < 0 and a % 2)


def test_near_central_points_iff_m_odd():
    for n in (2, 4, 6, 8, 10):
        C = critical_integers(n, 4)
        if (n // 2) % 2:
            assert 0 in C and 1 in C
        else:
            assert 0 not in C and 1 not in C


# --- trivial zero prediction -------------------------------------------------------------

def test_locations_match_theorem():
    spec = _spec5()
    for n in range(1, 13):
        locs = trivial_zero_locations(spec, n).locations
        if n in (2, 6, 10):
            assert locs == ((0, 0), (1, 1)), n
        else:
            assert locs == (), n


def test_locations_second_prime():
    spec = cm_spec_from_curve(CURVE, 1, 32, make_context(13, 16))
    for n in range(1, 13):
        locs = trivial_zero_locations(spec, n).locations
        assert bool(locs) == (n in (2, 6, 10)), n
    rep = trivial_zero_locations(spec, 6, with_certificates=True, n_cert=8)
    for cert in rep.certificates:
        assert cert.c0.min_valuation() >= 8
        assert cert.c1.valuation() < 8


def test_locations_match_interpolation_factor_inspection():
    spec = _spec5()
    for n in range(2, 13, 2):
        predicted = list(trivial_zero_locations(spec, n).locations)
        inspected = inspect_interpolation_factors(spec, n)
        assert predicted == inspected, n


def test_certificates_order_one():
    spec = _spec5()
    rep = trivial_zero_locations(spec, 2, with_certificates=True, n_cert=8)
    assert len(rep.certificates) == 2
    for cert in rep.certificates:
        assert cert.order == 1
        assert cert.c0.min_valuation() >= cert.n_cert
        assert cert.c1.valuation() < cert.n_cert


# --- interpolation product ----------------------------------------------------------------

def test_e_plus_matches_algebraic_simplification():
    spec = _spec5()
    alpha = unit_root(spec).alpha
    got = e_plus(spec, 2, 1)
    # (1 - 5/alpha^2)(1 - beta^2/25) = (1 - 5 alpha^(-2))(1 - alpha^(-2))
    simplified = (1 - 5 * alpha**-2) * (1 - alpha**-2)
    assert (got - simplified).min_valuation() >= 14
    assert got.residue(8) == 114732  # frozen from an independent prototype run


def test_e_plus_nonzero_and_i_shift():
    spec = _spec5()
    v0 = e_plus(spec, 2, 0)
    v1 = e_plus(spec, 2, 1)
    assert not v0.is_zero() and not v1.is_zero()
    # m = 1: exchanging i = 0 and 1 swaps the two exponents, same product
    assert (v0 - v1).min_valuation() >= 14


def test_e_plus_larger_power():
    spec = _spec5()
    v = e_plus(spec, 6, 0)
    assert not v.is_zero()
    assert v.valuation() == 0


def test_e_plus_rejects_non_exceptional():
    spec = _spec5()
    with pytest.raises(ValueError):
        e_plus(spec, 4, 0)
    with pytest.raises(ValueError):
        e_plus(spec, 3, 0)
    with pytest.raises(ValueError):
        e_plus(spec, 2, 2)
