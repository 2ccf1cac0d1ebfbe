"""Criterion functional against closed forms, plus sweep flag semantics."""

from __future__ import annotations

import numpy as np
import pytest

from disclab.carleson import (CriterionSpec, compactness_trace, composition_report,
                              criterion_sup, criterion_value, multiplication_report,
                              s2p_boundedness_report)
from disclab.errors import CenterOutsideOpenDisc, NotSelfMap
from disclab.series import Poly
from disclab.spaces import integral_mean
from disclab.series import expand

UNIT = Poly((1.0,))
IDENT = Poly((0.0, 1.0))
HALF = Poly((0.0, 0.5))


class TestCriterionValue:
    def test_poisson_normalization(self, grid):
        # phi = id, weight = 1, q = p: the functional is the Poisson integral
        spec = CriterionSpec(IDENT, UNIT, 2.0)
        rng = np.random.default_rng(13)
        a = 0.95 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
        for point in a:
            assert abs(criterion_value(spec, complex(point), grid) - 1.0) < 1e-12

    def test_constant_symbol_closed_form(self, grid):
        # phi = 0 freezes the kernel at 1: Lambda(a) = (1-|a|^2)^(q/p) |c|^q
        spec = CriterionSpec(Poly((0.0,)), Poly((1.5,)), 2.0, 4.0)
        for a in (0.0, 0.3, 0.6 + 0.2j, 0.95j):
            want = (1.0 - abs(a) ** 2) ** 2 * 1.5 ** 4
            assert abs(criterion_value(spec, a, grid) - want) < 1e-12 * max(1.0, want)

    def test_origin_value_is_weight_mean(self, grid):
        w = Poly((0.5, 0.5))
        spec = CriterionSpec(HALF, w, 2.0)
        want = integral_mean(expand(w, 1), 2.0, 1.0, grid)
        assert abs(criterion_value(spec, 0.0, grid) - want) < 1e-14

    def test_half_map_closed_form(self, grid):
        # phi = z/2, weight = 1/4, p = q = 2:
        # Lambda(a) = (1/16) (1-|a|^2) / (1-|a|^2/4)
        spec = CriterionSpec(HALF, Poly((0.25,)), 2.0)
        for a in (0.0, 0.5, 0.8j, 0.95, -0.7 + 0.2j, 0.999):
            r2 = abs(a) ** 2
            want = (1.0 - r2) / (16.0 * (1.0 - r2 / 4.0))
            assert abs(criterion_value(spec, a, grid) - want) < 1e-12

    def test_center_must_be_interior(self, grid):
        spec = CriterionSpec(HALF, UNIT, 2.0)
        for a in (1.0, -1.0, 1.5j):
            with pytest.raises(CenterOutsideOpenDisc):
                criterion_value(spec, a, grid)

    def test_symbol_must_be_self_map(self, grid):
        spec = CriterionSpec(Poly((0.0, 1.2)), UNIT, 2.0)
        with pytest.raises(NotSelfMap):
            criterion_value(spec, 0.0, grid)

    def test_exponent_validation(self):
        with pytest.raises(ValueError):
            CriterionSpec(HALF, UNIT, 0.5)
        with pytest.raises(ValueError):
            CriterionSpec(HALF, UNIT, 2.0, 1.0)

    def test_grid_robustness(self, grid):
        # boundary-touching symbol, evaluated at half and full resolution
        from disclab.boundary import BoundaryGrid
        spec = CriterionSpec(Poly((0.5, 0.5)), UNIT, 2.0)
        for a in (0.0, 0.5, 0.8, -0.6j):
            v1 = criterion_value(spec, a, BoundaryGrid(2048))
            v2 = criterion_value(spec, a, grid)
            assert abs(v1 - v2) < 1e-6 * max(1.0, v2)


class TestCriterionSweep:
    def test_poisson_sweep_is_flat(self, grid):
        rep = criterion_sup(CriterionSpec(IDENT, UNIT, 2.0), grid, levels=8,
                            keep_samples=False)
        assert abs(rep.sup_estimate - 1.0) < 1e-8
        for lm in rep.levels:
            assert abs(lm.kappa - 1.0) < 1e-8
        assert rep.flags["sup_finite_consistent"] is True
        assert rep.flags["limsup_zero_consistent"] is False

    def test_half_map_sweep(self, grid):
        rep = criterion_sup(CriterionSpec(HALF, UNIT, 2.0), grid, levels=12,
                            keep_samples=False)
        assert abs(rep.sup_estimate - 1.0) < 1e-10
        assert abs(rep.argmax_a) < 1e-12
        for lm in rep.levels:
            r2 = (1.0 - lm.eps) ** 2
            want = (1.0 - r2) / (1.0 - r2 / 4.0)
            assert abs(lm.kappa - want) < 1e-10 * max(1.0, want)
        assert rep.flags["sup_finite_consistent"] is True
        assert rep.flags["limsup_zero_consistent"] is True

    def test_rotation_invariance_of_levels(self, grid):
        base = criterion_sup(CriterionSpec(Poly((0.0, 0.6)), UNIT, 2.0), grid,
                             levels=6, keep_samples=False)
        rot = criterion_sup(CriterionSpec(Poly((0.0, 0.6 * np.exp(0.25j * np.pi))),
                                          UNIT, 2.0), grid, levels=6, keep_samples=False)
        for lm_b, lm_r in zip(base.levels, rot.levels):
            assert abs(lm_b.kappa - lm_r.kappa) < 1e-10 * max(1.0, lm_b.kappa)

    def test_contraction_sups_increase(self, grid):
        sups = []
        for s in (0.3, 0.7, 0.9):
            spec = CriterionSpec(Poly((0.0, s)), Poly((s * s,)), 2.0)
            rep = criterion_sup(spec, grid, levels=6, keep_samples=False)
            assert abs(rep.sup_estimate - s ** 4) < 1e-10
            sups.append(rep.sup_estimate)
        assert sups[0] < sups[1] < sups[2]

    def test_larger_exponent_blows_up(self, grid):
        # q > p embedding of the identity: kappa doubles with every level
        rep = criterion_sup(CriterionSpec(IDENT, UNIT, 2.0, 4.0), grid, levels=8,
                            keep_samples=False)
        for lm in rep.levels:
            r2 = (1.0 - lm.eps) ** 2
            want = (1.0 + r2) / (1.0 - r2)
            assert abs(lm.kappa - want) < 1e-7 * want
        assert rep.flags["sup_finite_consistent"] is False
        assert rep.flags["limsup_zero_consistent"] is False

    def test_samples_retention(self, grid):
        rep = criterion_sup(CriterionSpec(HALF, UNIT, 2.0), grid, levels=2)
        refined_flags = {s[2] for s in rep.samples}
        assert refined_flags == {False, True}
        assert all(abs(s[0]) < 1.0 for s in rep.samples)
        assert "samples" not in rep.to_dict()
        bare = criterion_sup(CriterionSpec(HALF, UNIT, 2.0), grid, levels=2,
                             keep_samples=False)
        assert bare.samples is None

    def test_report_dict_shape(self, grid):
        d = criterion_sup(CriterionSpec(HALF, UNIT, 2.0), grid, levels=3,
                          keep_samples=False).to_dict()
        assert set(d) == {"sup_estimate", "argmax_a", "levels", "flags"}
        assert len(d["levels"]) == 3
        assert set(d["levels"][0]) == {"eps", "kappa"}
        assert set(d["flags"]) == {"sup_finite_consistent", "limsup_zero_consistent"}


class TestOperatorReports:
    def test_composition_is_unit_weight_specialization(self, grid):
        direct = composition_report(HALF, 2.0, grid, levels=4)
        via = s2p_boundedness_report(HALF, UNIT, 2.0, grid, levels=4)
        assert direct.to_dict() == via.to_dict()

    def test_multiplication_is_identity_specialization(self, grid):
        psi = Poly((0.5, 0.5))
        direct = multiplication_report(psi, 2.0, grid, levels=4)
        via = s2p_boundedness_report(IDENT, psi, 2.0, grid, levels=4)
        assert direct.to_dict() == via.to_dict()

    def test_boundedness_report_shape(self, grid):
        d = s2p_boundedness_report(HALF, Poly((0.0, 0.0, 1.0)), 4.0, grid,
                                   levels=4).to_dict()
        assert set(d) == {"p", "weight_norm_term", "order1", "order2", "flags"}
        assert d["flags"]["bounded_consistent"] is True

    def test_p1_verdict_is_flagged(self, grid):
        low = compactness_trace(HALF, UNIT, 1.0, grid, levels=4)
        assert low.to_dict()["flags"]["p1_criterion_only"] is True
        high = compactness_trace(HALF, UNIT, 2.0, grid, levels=4)
        assert high.to_dict()["flags"]["p1_criterion_only"] is False
