import math

import pytest

from cuspgrowth import (
    DTowerDatum,
    GroupFamily,
    Method,
    ResourceLimitError,
    ValidationError,
    brute_force_order,
    cusp_index_proxy,
    d_tower_series,
    fit_exponent,
    primes_in_range,
    psl2_order,
    sl2_order,
    sl_order,
    su_order,
    u_order,
    unitriangular_u_order,
)
from cuspgrowth.gf import field


class TestFiniteField:
    def test_deterministic_moduli(self):
        # Least irreducible quadratics in the little-endian coefficient order.
        assert field(2, 2).modulus_coeffs == (1, 1)   # x^2 + x + 1
        assert field(3, 2).modulus_coeffs == (1, 0)   # x^2 + 1

    def test_field_axioms_sampled(self):
        f = field(3, 2)
        elems = range(f.size)
        for a in elems:
            assert f.add(a, f.neg(a)) == 0
            if a != 0:
                assert f.mul(a, f.inv(a)) == 1
        for a in elems:
            for b in elems:
                assert f.mul(a, b) == f.mul(b, a)
                for c in (0, 1, 5, 7):
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))

    def test_frobenius_is_an_involution_over_the_prime(self):
        q = 3
        f = field(3, 2)
        for a in range(f.size):
            assert f.pow(f.pow(a, q), q) == a


class TestSl2:
    def test_frozen_values(self):
        assert sl2_order(2).order == 6
        assert sl2_order(3).order == 24
        assert sl2_order(4).order == 48

    def test_formula_matches_enumeration_small(self):
        for n in range(2, 13):
            assert brute_force_order(GroupFamily.SL2_ZN, 2, n).order == sl2_order(n).order

    def test_psl2(self):
        assert psl2_order(2) == 6
        assert psl2_order(3) == 12
        assert psl2_order(5) == 60

    def test_modulus_guard(self):
        with pytest.raises(ValidationError):
            sl2_order(1)


class TestClassicalOrders:
    def test_frozen_values(self):
        assert u_order(2, 2).order == 18
        assert u_order(2, 3).order == 96
        assert u_order(3, 2).order == 648
        assert su_order(3, 2).order == 216
        assert su_order(2, 2).order == 6
        assert sl_order(3, 2).order == 168
        assert sl_order(3, 3).order == 5616
        assert unitriangular_u_order(3, 2).order == 8

    def test_sl2_family_consistency(self):
        for q in (2, 3, 5, 7, 11):
            assert sl_order(2, q).order == sl2_order(q).order
            assert su_order(2, q).order == sl2_order(q).order

    def test_prime_power_arguments(self):
        assert u_order(2, 4).order == 4 * 5 * 15
        with pytest.raises(ValidationError, match="prime power"):
            u_order(2, 6)

    def test_su_divisibility(self):
        for m in (2, 3, 4):
            for q in (2, 3, 5, 7):
                total = su_order(m, q).order
                assert total % q ** (m * (m - 1) // 2) == 0
                assert u_order(m, q).order % (q + 1) == 0

    def test_log_ratio_increases_to_dimension(self):
        for m in (2, 3):
            limit = m * m - 1
            previous = 0.0
            for q in primes_in_range(2, 199):
                ratio = math.log(su_order(m, q).order) / math.log(q)
                assert previous < ratio < limit
                previous = ratio


class TestBruteForce:
    @pytest.mark.parametrize("family", [GroupFamily.SL, GroupFamily.U,
                                        GroupFamily.SU, GroupFamily.UNITRIANGULAR_U])
    @pytest.mark.parametrize("m,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_formula_equals_brute_force_within_cap(self, family, m, q):
        base = q * q if family is not GroupFamily.SL else q
        space = base ** (m * m)
        formula = {
            GroupFamily.SL: sl_order,
            GroupFamily.U: u_order,
            GroupFamily.SU: su_order,
            GroupFamily.UNITRIANGULAR_U: unitriangular_u_order,
        }[family](m, q)
        if space > 1 << 28:
            with pytest.raises(ResourceLimitError):
                brute_force_order(family, m, q)
            return
        brute = brute_force_order(family, m, q)
        assert brute.method is Method.BRUTE_FORCE
        assert formula.method is Method.FORMULA
        assert brute.order == formula.order

    def test_cap_is_configurable(self):
        with pytest.raises(ResourceLimitError) as err:
            brute_force_order(GroupFamily.SL, 2, 3, cap=10)
        assert err.value.space == 81
        with pytest.raises(ResourceLimitError):
            brute_force_order(GroupFamily.SL2_ZN, 2, 100, cap=10**6)

    def test_heisenberg_at_q3(self):
        assert brute_force_order(GroupFamily.UNITRIANGULAR_U, 2, 3).order == 3


class TestCuspIndexProxy:
    def test_frozen_values(self):
        assert cusp_index_proxy(2, 2) == 27 == (4 - 1) * (8 + 1)
        assert cusp_index_proxy(2, 3) == 224 == (9 - 1) * (27 + 1)

    def test_closed_form_for_n2(self):
        for q in primes_in_range(2, 50):
            assert cusp_index_proxy(2, q) == (q * q - 1) * (q**3 + 1)

    def test_times_parabolic_order_recovers_the_group(self):
        for q in primes_in_range(2, 50):
            assert cusp_index_proxy(2, q) * q**3 == su_order(3, q).order
            assert cusp_index_proxy(3, q) * q**5 == su_order(4, q).order

    def test_growth_exponent(self):
        pairs = [(q, cusp_index_proxy(2, q)) for q in primes_in_range(2, 199)]
        fit = fit_exponent(pairs)
        assert abs(fit.slope - 5.0) <= 0.05

    def test_guards(self):
        with pytest.raises(ValidationError):
            cusp_index_proxy(4, 5)
        with pytest.raises(ValidationError):
            cusp_index_proxy(2, 8)


class TestDTower:
    def test_series_values(self):
        series = d_tower_series(2, 2, [5, 7])
        assert series[0] == DTowerDatum(
            q=5,
            vol_proxy=su_order(3, 5).order,
            b1_proxy=2 + 2 * psl2_order(5),
            cusp_proxy=cusp_index_proxy(2, 5),
        )
        assert series[1].q == 7

    def test_distinct_primes_required(self):
        with pytest.raises(ValidationError, match="distinct"):
            d_tower_series(2, 2, [5, 5])
        with pytest.raises(ValidationError, match="not prime"):
            d_tower_series(2, 2, [6])

    def test_genus_guard(self):
        with pytest.raises(ValidationError, match="genus"):
            d_tower_series(2, 1, [5])

    def test_exponents_land_on_targets(self):
        primes = primes_in_range(5, 199)
        series = d_tower_series(2, 2, primes)
        b1 = fit_exponent([(d.vol_proxy, d.b1_proxy) for d in series])
        cusps = fit_exponent([(d.vol_proxy, d.cusp_proxy) for d in series])
        assert abs(b1.slope - 0.375) <= 0.02
        assert abs(cusps.slope - 0.625) <= 0.02
        series3 = d_tower_series(3, 2, primes)
        vol = fit_exponent([(d.q, d.vol_proxy) for d in series3])
        b1_3 = fit_exponent([(d.vol_proxy, d.b1_proxy) for d in series3])
        assert abs(vol.slope - 15.0) <= 0.1
        assert abs(b1_3.slope - 0.2) <= 0.02
