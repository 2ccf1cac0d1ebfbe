"""Norms on the disc scales against closed forms and golden chain constants."""

from __future__ import annotations

import json
import pathlib

import numpy as np
import pytest

from disclab.errors import InvalidRadius, PointOutsideOpenDisc
from disclab.series import AnalyticFunction, Kernel, Poly, expand
from disclab.spaces import (NormParams, growth_profile, hp_norm, hp_norm_with_error,
                            integral_mean, s2p_norm, space_norm, sp_norm)

GOLDEN = pathlib.Path(__file__).parent / "golden"


def monomial(n):
    return expand(Poly((0.0,) * n + (1.0,)), n)


class TestIntegralMean:
    def test_affine_square_mean(self, grid):
        f = expand(Poly((1.0, 1.0)), 1)
        assert abs(integral_mean(f, 2.0, 1.0, grid) - 2.0) < 1e-12

    def test_radius_validation(self, grid):
        f = expand(Poly((1.0,)), 0)
        for r in (0.0, -0.5, 1.5):
            with pytest.raises(InvalidRadius):
                integral_mean(f, 2.0, r, grid)

    def test_exponent_validation(self, grid):
        f = expand(Poly((1.0,)), 0)
        with pytest.raises(ValueError):
            integral_mean(f, 0.5, 1.0, grid)

    def test_means_increase_with_radius(self, grid):
        f = expand(Kernel(0.5, 1.0), 64)
        means = [integral_mean(f, 2.0, r, grid) for r in (0.25, 0.5, 0.75, 1.0)]
        assert all(a < b for a, b in zip(means, means[1:]))


class TestNorms:
    @pytest.mark.parametrize("n", [1, 3, 8])
    @pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
    def test_monomials_have_unit_norm(self, n, p, grid):
        assert abs(hp_norm(monomial(n), p, grid) - 1.0) < 1e-12

    def test_parseval_identity(self, grid):
        rng = np.random.default_rng(7)
        c = rng.standard_normal(257) + 1j * rng.standard_normal(257)
        f = expand(Poly(tuple(c)), 256)
        lhs = hp_norm(f, 2.0, grid) ** 2
        rhs = float(np.sum(np.abs(c) ** 2))
        assert abs(lhs - rhs) <= 1e-10 * rhs

    def test_order1_worked_example(self, grid):
        f = expand(Poly((1.0, 0.0, 1.0)), 2)
        assert abs(sp_norm(f, 2.0, grid) - 3.0) < 1e-12

    def test_order2_worked_examples(self, grid):
        f = expand(Poly((1.0, 1.0, 1.0)), 2)
        assert abs(s2p_norm(f, 2.0, grid) - 4.0) < 1e-12
        assert abs(s2p_norm(monomial(3), 2.0, grid) - 6.0) < 1e-12

    def test_space_dispatch(self, grid):
        f = expand(Poly((0.5, 0.5)), 1)
        assert abs(space_norm(f, NormParams("alg"), grid) - 1.0) < 1e-12
        assert space_norm(f, NormParams("hp", 2.0), grid) == hp_norm(f, 2.0, grid)
        assert space_norm(f, NormParams("s2p", 4.0), grid) == s2p_norm(f, 4.0, grid)

    def test_norm_params_validation(self):
        with pytest.raises(ValueError):
            NormParams("bogus")
        with pytest.raises(ValueError):
            NormParams("hp", 0.5)

    def test_doubling_error_is_tiny_for_polynomials(self, grid):
        f = expand(Poly(tuple(range(1, 10))), 8)
        value, err = hp_norm_with_error(f, 2.0, grid)
        assert err < 1e-12
        assert value > 0

    def test_homogeneity_and_triangle(self, grid):
        rng = np.random.default_rng(7)
        for p in (1.0, 2.0, 4.0):
            for _ in range(3):
                f = AnalyticFunction(rng.standard_normal(33) + 1j * rng.standard_normal(33))
                g = AnalyticFunction(rng.standard_normal(33) + 1j * rng.standard_normal(33))
                c = complex(rng.standard_normal(), rng.standard_normal())
                fg = AnalyticFunction(f.coeffs + g.coeffs)
                cf = AnalyticFunction(c * f.coeffs)
                for norm in (hp_norm, sp_norm, s2p_norm):
                    nf, ng = norm(f, p, grid), norm(g, p, grid)
                    scale = max(1.0, nf)
                    assert abs(norm(cf, p, grid) - abs(c) * nf) <= 1e-10 * scale * abs(c)
                    assert norm(fg, p, grid) <= nf + ng + 1e-10 * scale


class TestGrowthProfiles:
    def test_constant_is_flat_at_p1(self):
        prof = growth_profile(expand(Poly((1.0,)), 0), 1.0, 0)
        assert prof.max_ratio == 1.0

    def test_identity_first_derivative(self):
        # f' = 1, weight (1-|z|^2)^(1/2) <= 1 with equality at the origin
        prof = growth_profile(expand(Poly((0.0, 1.0)), 1), 2.0, 1)
        assert prof.max_ratio == 1.0
        assert len(prof.samples) == len(prof.points)

    def test_rejects_boundary_points(self):
        f = expand(Poly((1.0,)), 0)
        with pytest.raises(PointOutsideOpenDisc):
            growth_profile(f, 2.0, 0, z_grid=np.array([0.5, 1.0]))

    def test_order_validation(self):
        f = expand(Poly((1.0,)), 0)
        with pytest.raises(ValueError):
            growth_profile(f, 2.0, 3)


def test_norm_chain_constants_match_golden(grid, corpus):
    golden = json.loads((GOLDEN / "chains.json").read_text())
    for p in (1.0, 2.0, 4.0):
        want = golden[f"p{p:g}"]
        hp_over_sp = max(hp_norm(f, p, grid) / sp_norm(f, p, grid) for f in corpus)
        sp_over_s2p = max(sp_norm(f, p, grid) / s2p_norm(f, p, grid) for f in corpus)
        assert abs(hp_over_sp - want["hp_over_sp"]) <= 1e-8 * max(1.0, want["hp_over_sp"])
        assert abs(sp_over_s2p - want["sp_over_s2p"]) <= 1e-8 * max(1.0, want["sp_over_s2p"])
