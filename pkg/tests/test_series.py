"""Series arithmetic against closed-form oracles.

Kernel expansions have geometric/binomial closed forms, composition and
antiderivative have worked low-degree examples, and every certified tail
is checked against direct evaluation error.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from disclab.errors import (DegreeTooSmall, KernelCenterTooLarge, MaxDegreeExceeded,
                            NotSelfMap, PointOutsideClosedDisc)
from disclab.series import (AnalyticFunction, Kernel, Poly, Product, Scale, Sum,
                            antiderivative, compose, derivative, evaluate, expand,
                            multiply, spec_from_json, spec_to_json)


def kernel_closed_form(a: complex, s: float, z):
    return (1.0 - np.conj(a) * np.asarray(z)) ** (-s)


class TestKernelExpansion:
    def test_geometric_coefficients(self):
        f = expand(Kernel(0.5, 1.0), 8)
        assert np.array_equal(f.coeffs, 0.5 ** np.arange(9))

    def test_binomial_coefficients(self):
        # s = 2 gives coefficients (n+1) a^n
        f = expand(Kernel(0.3, 2.0), 6)
        expected = (np.arange(7) + 1.0) * 0.3 ** np.arange(7)
        assert np.allclose(f.coeffs, expected, rtol=1e-15)

    def test_complex_center_conjugated(self):
        a = 0.4 + 0.2j
        f = expand(Kernel(a, 1.0), 5)
        assert np.allclose(f.coeffs, np.conj(a) ** np.arange(6), rtol=1e-15)

    def test_value_at_minus_one(self):
        f = expand(Kernel(0.5, 1.0), 64)
        assert abs(evaluate(f, -1.0) - 2.0 / 3.0) < 1e-12

    def test_center_cap(self):
        with pytest.raises(KernelCenterTooLarge):
            Kernel(0.995, 1.0)

    def test_tail_blowup_raises(self):
        # r = |a| (N+1+s)/(N+2) reaches 1 for large s at moderate degree
        with pytest.raises(DegreeTooSmall):
            expand(Kernel(0.99, 8.0), 512)

    def test_tail_certifies_evaluation_error(self):
        # Degree 24 keeps the certified tail well above evaluation roundoff.
        rng = np.random.default_rng(3)
        for a, s in ((0.5, 1.0), (0.7, 2.0), (-0.3 + 0.5j, 0.5)):
            f = expand(Kernel(a, s), 24)
            z = np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
            err = np.abs(evaluate(f, z) - kernel_closed_form(a, s, z))
            assert err.max() <= f.tail_bound + 1e-13


class TestPolyAndCombinators:
    def test_padding(self):
        f = expand(Poly((1.0, 2.0)), 4)
        assert np.array_equal(f.coeffs, [1, 2, 0, 0, 0])

    def test_degree_too_small(self):
        with pytest.raises(DegreeTooSmall):
            expand(Poly((1.0, 2.0, 3.0)), 1)

    def test_sum_product_scale(self):
        spec = Sum((Scale(2.0, Poly((1.0,))), Product((Poly((0.0, 1.0)), Poly((0.0, 1.0))))))
        f = expand(spec, 4)
        assert np.array_equal(f.coeffs, [2, 0, 1, 0, 0])

    def test_json_round_trip(self):
        spec = Sum((
            Scale(1.0 - 2.0j, Kernel(0.25 + 0.1j, 1.5)),
            Product((Poly((0.5, 0.5)), Poly((0.0, 0.0, 1.0)))),
        ))
        again = spec_from_json(spec_to_json(spec))
        assert spec_to_json(again) == spec_to_json(spec)


class TestEvaluate:
    def test_outside_closed_disc(self):
        f = expand(Poly((1.0,)), 0)
        with pytest.raises(PointOutsideClosedDisc):
            evaluate(f, 1.0 + 1e-6)

    def test_scalar_and_vector(self):
        f = expand(Poly((1.0, 1.0)), 1)
        assert evaluate(f, 0.5) == 1.5
        assert np.array_equal(evaluate(f, np.array([0.0, 0.5])), [1.0, 1.5])


class TestDerivativeAntiderivative:
    def test_second_derivative_of_cube(self):
        f = derivative(derivative(expand(Poly((0, 0, 0, 1.0)), 3)))
        assert np.array_equal(f.coeffs, [0.0, 6.0])

    def test_kernel_derivative_at_zero(self):
        f = derivative(expand(Kernel(0.5, 1.0), 64))
        assert abs(evaluate(f, 0.0) - 0.5) < 1e-12

    def test_antiderivative_value(self):
        f = antiderivative(expand(Poly((1.0, 2.0, 3.0)), 2))
        assert abs(evaluate(f, 1.0) - 3.0) < 1e-15
        assert evaluate(f, 0.0) == 0.0

    def test_round_trip_dyadic_exact(self):
        f = expand(Poly((1.0, 0.5, 0.25, -2.0, 3.5)), 4)
        back = derivative(antiderivative(f))
        assert np.array_equal(back.coeffs, f.coeffs)

    def test_round_trip_within_one_ulp(self):
        rng = np.random.default_rng(0)
        c = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        f = expand(Poly(tuple(c)), 63)
        back = derivative(antiderivative(f))
        for got, want in zip(back.coeffs, f.coeffs):
            assert abs(got.real - want.real) <= math.ulp(abs(want.real))
            assert abs(got.imag - want.imag) <= math.ulp(abs(want.imag))

    def test_degree_cap(self):
        f = expand(Poly((1.0,) * 513), 512)
        with pytest.raises(MaxDegreeExceeded):
            antiderivative(f, 512)


class TestMultiply:
    def test_square_of_affine(self):
        f = expand(Poly((1.0, 1.0)), 1)
        assert np.array_equal(multiply(f, f).coeffs, [1.0, 2.0, 1.0])

    def test_commutative_associative(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            fs = [expand(Poly(tuple(rng.standard_normal(d) + 1j * rng.standard_normal(d))),
                         d - 1)
                  for d in rng.integers(2, 65, size=3)]
            f, g, h = fs
            ab = multiply(f, g)
            ba = multiply(g, f)
            assert np.allclose(ab.coeffs, ba.coeffs, atol=1e-12, rtol=1e-12)
            lhs = multiply(ab, h)
            rhs = multiply(f, multiply(g, h))
            scale = max(1.0, np.abs(lhs.coeffs).max())
            assert np.abs(lhs.coeffs - rhs.coeffs).max() <= 1e-12 * scale

    def test_truncation_charged_to_tail(self):
        f = expand(Poly((0.0, 1.0)), 1)
        g = expand(Poly((0.0, 0.0, 1.0)), 2)
        h = multiply(f, g, max_degree=2)
        # z * z^2 truncated to degree 2 is the zero polynomial with tail 1
        assert np.all(h.coeffs == 0)
        assert h.tail_bound >= 1.0


class TestCompose:
    def test_square_with_affine(self):
        f = expand(Poly((0.0, 0.0, 1.0)), 2)
        phi = expand(Poly((0.5, 0.5)), 1)
        assert np.allclose(compose(f, phi).coeffs, [0.25, 0.5, 0.25], rtol=1e-15)

    def test_identity_is_exact(self):
        rng = np.random.default_rng(5)
        c = rng.standard_normal(33) + 1j * rng.standard_normal(33)
        f = expand(Poly(tuple(c)), 32)
        ident = expand(Poly((0.0, 1.0)), 1)
        assert np.array_equal(compose(f, ident).coeffs, f.coeffs)

    def test_constant_through_any_symbol(self):
        c = expand(Poly((2.5,)), 0)
        phi = expand(Poly((0.1, 0.3, 0.2)), 2)
        out = compose(c, phi)
        assert out.coeffs[0] == 2.5 and np.all(out.coeffs[1:] == 0)

    def test_evaluation_consistency(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            f = expand(Poly(tuple(rng.standard_normal(9) + 1j * rng.standard_normal(9))), 8)
            raw = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            raw *= 0.9 / np.abs(raw).sum()
            phi = expand(Poly(tuple(raw)), 4)
            z = 0.9 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
            lhs = evaluate(compose(f, phi), z)
            rhs = evaluate(f, evaluate(phi, z))
            assert np.abs(lhs - rhs).max() < 1e-10

    def test_rejects_non_self_map(self):
        f = expand(Poly((0.0, 1.0)), 1)
        phi = expand(Poly((0.0, 1.1)), 1)
        with pytest.raises(NotSelfMap):
            compose(f, phi)


class TestAnalyticFunction:
    def test_coefficients_read_only(self):
        f = expand(Poly((1.0, 2.0)), 1)
        with pytest.raises(ValueError):
            f.coeffs[0] = 0.0

    def test_declared_radius_must_exceed_one(self):
        with pytest.raises(ValueError):
            AnalyticFunction(np.array([1.0 + 0j]), 1.0, 0.0, 0.0)
