import math

import pytest
from scipy import special

from cpint.errors import NoLimitAtInfinity
from cpint.quadrature import epsilon_limit, gauss_segment, hake_from_integrand

FRESNEL_TOTAL = 0.6266570686577501   # sqrt(pi) / 2^(3/2)
SI_TOTAL = math.pi / 2.0


class TestGaussSegment:
    def test_polynomial_exact(self):
        got = gauss_segment(lambda x: x ** 7 - 3.0 * x ** 2 + 1.0, -1.0, 2.0)
        exact = (2.0 ** 8 - 1.0) / 8.0 - (2.0 ** 3 + 1.0) + 3.0
        assert got == pytest.approx(exact, abs=1e-12)


class TestEpsilonLimit:
    def test_accelerates_alternating_series(self):
        partial = []
        s = 0.0
        for k in range(1, 30):
            s += (-1.0) ** (k + 1) / k
            partial.append(s)
        assert epsilon_limit(partial) == pytest.approx(math.log(2.0),
                                                       abs=1e-10)


class TestHake:
    def test_fresnel_total(self):
        h = hake_from_integrand(lambda x: math.sin(x * x))
        assert h.total == pytest.approx(FRESNEL_TOTAL, abs=1e-6)
        assert h.defect_bound <= 2e-2

    def test_fresnel_primitive_matches_special_function(self):
        h = hake_from_integrand(lambda x: math.sin(x * x))
        F = h.distribution.primitive
        half = math.sqrt(math.pi / 2.0)
        for x in (0.5, 2.0, 10.0, 50.0):
            s, _ = special.fresnel(x * math.sqrt(2.0 / math.pi))
            assert F(x) == pytest.approx(half * float(s), abs=1e-9)

    def test_fresnel_tail_model_within_defect(self):
        h = hake_from_integrand(lambda x: math.sin(x * x))
        F = h.distribution.primitive
        half = math.sqrt(math.pi / 2.0)
        for x in (2e2, 1e4, 1e6):
            s, _ = special.fresnel(x * math.sqrt(2.0 / math.pi))
            assert abs(F(x) - half * float(s)) <= h.defect_bound

    def test_sine_integral(self):
        h = hake_from_integrand(
            lambda x: math.sin(x) / x if x != 0.0 else 1.0)
        assert h.total == pytest.approx(SI_TOTAL, abs=1e-6)
        F = h.distribution.primitive
        for x in (1.0, 5.0, 20.0):
            assert F(x) == pytest.approx(float(special.sici(x)[0]),
                                         abs=1e-8)

    def test_divergent_oscillation_rejected(self):
        with pytest.raises(NoLimitAtInfinity):
            hake_from_integrand(math.sin)

    def test_nonoscillatory_path(self):
        h = hake_from_integrand(lambda x: math.exp(-x))
        assert h.total == pytest.approx(1.0, abs=1e-9)
        assert h.distribution.primitive(2.0) == pytest.approx(
            -math.expm1(-2.0), abs=1e-9)
