"""Carleson-type boundedness and compactness criteria.

The criterion functional integrates a Mobius-kernel power against a weight
along the pulled-back boundary:

    Lambda(a) = mean_j ((1-|a|^2) / |1 - conj(a) phi(w_j)|^2)^(q/p) |weight(w_j)|^q

Boundedness of the associated operator corresponds to sup_a Lambda(a) finite,
compactness to Lambda vanishing as |a| -> 1.  Both are probed on dyadic
radial levels |a| = 1 - 2^-k with angular grids that refine with the level.

Near the boundary the integrand develops a peak of width ~ (1-|a|) wherever
phi(w) approaches the circle, so the evaluation grid is upsampled globally
(powers of two, preserving the periodic trapezoid rule's spectral accuracy)
until the peak is resolved; upsampling is triggered at |a| > 0.9 and sized
from the observed minimum of |1 - conj(a) phi(w)|.

The level sweep ranks candidates with a cheap coarse pass, re-evaluates the
leaders at full accuracy, and finishes with golden-section polish around the
best point; reported level maxima come from refined evaluations only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryGrid, boundary_sup, default_grid
from .errors import CenterOutsideOpenDisc, NotSelfMap
from .operators import IDENTITY_MAP, UNIT, expanded, expansion_weights, _symbol_degree
from .series import DEFAULT_MAX_DEGREE, AnalyticFunction, FunctionSpec, evaluate
from .spaces import s2p_norm

DEFAULT_LEVELS = 12

#: coarse ranking resolution of the level sweep
_COARSE_SAMPLES = 1024

#: hard cap on adaptive grid refinement
MAX_REFINED_SAMPLES = 2 ** 18

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CriterionSpec:
    """Criterion data: self-map phi, weight symbol, exponents 1 <= p <= q."""

    phi: FunctionSpec
    weight: FunctionSpec
    p: float
    q: float | None = None

    def __post_init__(self) -> None:
        q = self.p if self.q is None else self.q
        object.__setattr__(self, "q", float(q))
        object.__setattr__(self, "p", float(self.p))
        if not 1.0 <= self.p <= self.q:
            raise ValueError(
                f"exponents must satisfy 1 <= p <= q, got p = {self.p}, q = {self.q}"
            )


@dataclass(frozen=True)
class LevelMax:
    eps: float
    kappa: float


@dataclass(frozen=True, eq=False)
class CriterionReport:
    """Level sweep outcome for one weight."""

    sup_estimate: float
    argmax_a: complex
    levels: tuple[LevelMax, ...]
    flags: dict
    samples: tuple | None = None  # (a, value, refined) triples when requested

    def to_dict(self) -> dict:
        return {
            "sup_estimate": self.sup_estimate,
            "argmax_a": [self.argmax_a.real, self.argmax_a.imag],
            "levels": [{"eps": l.eps, "kappa": l.kappa} for l in self.levels],
            "flags": dict(self.flags),
        }


class _Engine:
    """Shared boundary data for evaluating Lambda for several weights at once."""

    def __init__(self, phi_fn: AnalyticFunction, weight_fns, p: float, q: float,
                 grid: BoundaryGrid):
        self.base_m = grid.size
        self.phi_fn = phi_fn
        self.weight_fns = list(weight_fns)
        self.qp = q / p
        self.q = q
        # |phi'| <= sum k |phi_k| sets the peak-width scale relative to d_min
        self.lip = float(np.sum(np.arange(len(phi_fn.coeffs)) * np.abs(phi_fn.coeffs)))
        self._data: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        sup_phi = boundary_sup(phi_fn, grid)
        if sup_phi > 1.0 + 1e-12:
            raise NotSelfMap(
                f"criterion symbol must map the disc to itself; boundary sup = {sup_phi:.6f}"
            )

    def data(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        if m not in self._data:
            pts = BoundaryGrid(m).points
            phi_vals = evaluate(self.phi_fn, pts)
            w = np.stack([np.abs(evaluate(wf, pts)) ** self.q for wf in self.weight_fns])
            self._data[m] = (phi_vals, w)
        return self._data[m]

    def effective_samples(self, a: complex) -> int:
        """Power-of-two grid size resolving the near-boundary integrand peak."""
        if abs(a) <= 0.9:
            return self.base_m
        phi_vals, _ = self.data(self.base_m)
        d_min = float(np.min(np.abs(1.0 - np.conj(a) * phi_vals)))
        # the coarse minimum can overshoot the true one by a Lipschitz step
        floor = max(1.0 - abs(a), d_min - self.lip * math.pi / self.base_m)
        need = 32.0 * max(1.0, self.lip) / max(floor, 1e-15)
        m = self.base_m
        while m < need and m < MAX_REFINED_SAMPLES:
            m *= 2
        return m

    def values_at(self, a: complex, m: int) -> np.ndarray:
        """Lambda(a) for every weight, on the m-point grid."""
        phi_vals, w = self.data(m)
        d2 = np.abs(1.0 - np.conj(a) * phi_vals) ** 2
        pref = (1.0 - abs(a) ** 2) ** self.qp
        if self.qp == 1.0:
            integrand = w / d2
        else:
            integrand = w * d2 ** (-self.qp)
        return pref * integrand.mean(axis=1)

    def refined(self, a: complex) -> np.ndarray:
        return self.values_at(a, self.effective_samples(a))

    def level_coarse(self, radius: float, angles: np.ndarray) -> np.ndarray:
        """Vectorized coarse Lambda over one level circle, all weights.

        |1 - conj(a) Phi|^2 = (1 + R^2 |Phi|^2) - 2 Re(conj(a) Phi) is a
        rank-two update in the angle of a, so the whole level costs two
        outer products.
        """
        m = min(self.base_m, _COARSE_SAMPLES)
        phi_vals, w = self.data(m)
        u = 1.0 + (radius * np.abs(phi_vals)) ** 2
        c = radius * np.cos(angles)
        s = radius * np.sin(angles)
        d2 = u[None, :] - 2.0 * (np.outer(c, phi_vals.real) + np.outer(s, phi_vals.imag))
        np.maximum(d2, 1e-300, out=d2)
        pref = (1.0 - radius ** 2) ** self.qp
        if self.qp == 1.0:
            kernel = 1.0 / d2
        else:
            kernel = d2 ** (-self.qp)
        return pref * (w @ kernel.T) / m  # shape (n_weights, n_angles)


def _golden_max(fn, lo: float, hi: float, iters: int = 32) -> tuple[float, float]:
    """Golden-section maximization; returns (best value, best abscissa)."""
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    best_v, best_x = (f1, x1) if f1 >= f2 else (f2, x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = fn(x2)
            if f2 > best_v:
                best_v, best_x = f2, x2
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = fn(x1)
            if f1 > best_v:
                best_v, best_x = f1, x1
    return best_v, best_x


def _trace_flags(kappas: list[float]) -> tuple[bool, bool]:
    """(sup_finite_consistent, limsup_zero_consistent) heuristics.

    Finite: the last three level maxima are non-increasing, or stay within
    twice the earlier peak.  Vanishing: non-increasing over the last four
    levels and either below 1e-3 of the peak or still decaying geometrically
    (step ratio <= 0.75) at the end of the trace; the geometric branch keeps
    traces that shrink like eps itself from being misread as plateaus at
    moderate level depth.
    """
    k = np.asarray(kappas)
    slack = 1e-9 * max(float(k.max()), 1e-300)
    last3 = k[-3:]
    noninc3 = bool(np.all(np.diff(last3) <= slack))
    if len(k) > 3 and float(k[:-3].max()) > 0:
        sup_finite = noninc3 or float(last3.max()) <= 2.0 * float(k[:-3].max())
    else:
        sup_finite = noninc3
    last4 = k[-4:]
    noninc4 = bool(np.all(np.diff(last4) <= slack))
    peak = float(k.max())
    small = float(k[-1]) <= 1e-3 * peak
    geometric = bool(
        np.all(last4[1:] <= 0.75 * last4[:-1] + slack)
    )
    limsup_zero = noninc4 and (small or geometric)
    return sup_finite, limsup_zero


def _sweep(phi_fn: AnalyticFunction, weight_fns, p: float, q: float,
           grid: BoundaryGrid, levels: int,
           keep_samples: bool) -> list[CriterionReport]:
    """Level sweep shared by every weight riding on the same phi."""
    if levels < 1:
        raise ValueError("level count must be positive")
    engine = _Engine(phi_fn, weight_fns, p, q, grid)
    n_w = len(engine.weight_fns)

    level_eps: list[float] = []
    level_kappa = [[] for _ in range(n_w)]
    level_best = [[] for _ in range(n_w)]  # (value, a, level_index)
    samples = [[] for _ in range(n_w)] if keep_samples else None

    for k in range(levels):
        eps = 2.0 ** (-k)
        radius = 1.0 - eps
        n_angles = min(int(math.ceil(64.0 / eps)), 8192)
        angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
        coarse = engine.level_coarse(radius, angles)  # (n_w, n_angles)

        idx = set(np.arange(0, n_angles, max(1, n_angles // 8))[:8].tolist())
        for w in range(n_w):
            order = np.argsort(-coarse[w], kind="stable")
            idx.update(order[:8].tolist())
        cand = sorted(idx)

        refined_vals = np.empty((n_w, len(cand)))
        for col, i in enumerate(cand):
            a = radius * complex(math.cos(angles[i]), math.sin(angles[i]))
            refined_vals[:, col] = engine.refined(a)

        for w in range(n_w):
            best_col = int(np.argmax(refined_vals[w]))
            a_best = radius * np.exp(1j * angles[cand[best_col]])
            level_kappa[w].append(float(refined_vals[w, best_col]))
            level_best[w].append((float(refined_vals[w, best_col]), complex(a_best), k))
            if keep_samples:
                samples[w].extend(
                    (complex(radius * np.exp(1j * angles[i])), float(coarse[w, i]), False)
                    for i in range(n_angles)
                )
                samples[w].extend(
                    (complex(radius * np.exp(1j * angles[i])), float(refined_vals[w, col]), True)
                    for col, i in enumerate(cand)
                )
        level_eps.append(eps)

    reports = []
    for w in range(n_w):
        sup_v, sup_a, k_star = max(level_best[w], key=lambda t: t[0])
        # golden polish around the best point: angle first, then radius
        n_angles = min(int(math.ceil(64.0 * 2.0 ** k_star)), 8192)
        radius = 1.0 - 2.0 ** (-k_star)
        theta = math.atan2(sup_a.imag, sup_a.real)
        span = 2.0 * np.pi / n_angles
        if radius > 0.0:
            v, th = _golden_max(
                lambda t: float(engine.refined(radius * np.exp(1j * t))[w]),
                theta - span, theta + span)
            if v > sup_v:
                sup_v, sup_a = v, radius * complex(math.cos(th), math.sin(th))
                theta = th
        r_lo = 1.0 - 2.0 ** (-(k_star - 1)) if k_star > 0 else 0.0
        r_hi = 1.0 - 2.0 ** (-(k_star + 1)) if k_star < levels - 1 else radius
        if r_hi > r_lo:
            v, r = _golden_max(
                lambda t: float(engine.refined(t * np.exp(1j * theta))[w]),
                r_lo, r_hi, iters=24)
            if v > sup_v:
                sup_v, sup_a = v, r * complex(math.cos(theta), math.sin(theta))

        sup_finite, limsup_zero = _trace_flags(level_kappa[w])
        reports.append(CriterionReport(
            sup_estimate=float(sup_v),
            argmax_a=complex(sup_a),
            levels=tuple(LevelMax(e, v) for e, v in zip(level_eps, level_kappa[w])),
            flags={
                "sup_finite_consistent": sup_finite,
                "limsup_zero_consistent": limsup_zero,
            },
            samples=tuple(samples[w]) if keep_samples else None,
        ))
    return reports


# =============================================================================
# Public criterion operations
# =============================================================================


def _criterion_functions(spec: CriterionSpec, max_degree: int
                         ) -> tuple[AnalyticFunction, AnalyticFunction]:
    phi_fn = expanded(spec.phi, _symbol_degree(spec.phi, max_degree))
    weight_fn = expanded(spec.weight, _symbol_degree(spec.weight, max_degree))
    return phi_fn, weight_fn


def criterion_value(spec: CriterionSpec, a: complex,
                    grid: BoundaryGrid | None = None,
                    max_degree: int = DEFAULT_MAX_DEGREE) -> float:
    """Lambda(a) for one center |a| < 1, at adaptive accuracy."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise CenterOutsideOpenDisc(f"criterion center must satisfy |a| < 1, got |a| = {abs(a):.6f}")
    g = grid if grid is not None else default_grid()
    phi_fn, weight_fn = _criterion_functions(spec, max_degree)
    engine = _Engine(phi_fn, [weight_fn], spec.p, spec.q, g)
    return float(engine.refined(a)[0])


def criterion_sup(spec: CriterionSpec, grid: BoundaryGrid | None = None,
                  levels: int = DEFAULT_LEVELS,
                  max_degree: int = DEFAULT_MAX_DEGREE,
                  keep_samples: bool = True) -> CriterionReport:
    """Dyadic level sweep for sup_a Lambda(a) with trace flags."""
    g = grid if grid is not None else default_grid()
    phi_fn, weight_fn = _criterion_functions(spec, max_degree)
    return _sweep(phi_fn, [weight_fn], spec.p, spec.q, g, levels, keep_samples)[0]


# =============================================================================
# Boundedness and compactness reports
# =============================================================================


@dataclass(frozen=True, eq=False)
class BoundednessReport:
    """Norm term plus the two criterion sweeps deciding order-2 boundedness."""

    p: float
    weight_norm: float
    order1: CriterionReport  # weight 2 psi' phi' + psi phi''
    order2: CriterionReport  # weight psi phi'^2
    bounded_consistent: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "weight_norm_term": self.weight_norm,
            "order1": self.order1.to_dict(),
            "order2": self.order2.to_dict(),
            "flags": {"bounded_consistent": self.bounded_consistent},
        }


@dataclass(frozen=True, eq=False)
class CompactnessReport:
    """kappa(eps) traces for the three expansion weights."""

    p: float
    order0: CriterionReport  # weight psi''
    order1: CriterionReport
    order2: CriterionReport
    compact_consistent: bool
    p1_caveat: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "order0": self.order0.to_dict(),
            "order1": self.order1.to_dict(),
            "order2": self.order2.to_dict(),
            "flags": {
                "compact_consistent": self.compact_consistent,
                "p1_criterion_only": self.p1_caveat,
            },
        }


def s2p_boundedness_report(phi: FunctionSpec, psi: FunctionSpec, p: float,
                           grid: BoundaryGrid | None = None,
                           levels: int = DEFAULT_LEVELS,
                           max_degree: int = DEFAULT_MAX_DEGREE,
                           keep_samples: bool = False) -> BoundednessReport:
    """Order-2 boundedness evidence for the weighted composition (q = p)."""
    g = grid if grid is not None else default_grid()
    phi_fn = expanded(phi, _symbol_degree(phi, max_degree))
    psi_fn = expanded(psi, _symbol_degree(psi, max_degree))
    _, w1, w2 = expansion_weights(phi_fn, psi_fn, max_degree)
    rep1, rep2 = _sweep(phi_fn, [w1, w2], p, p, g, levels, keep_samples)
    weight_norm = s2p_norm(psi_fn, p, g)
    bounded = (
        math.isfinite(weight_norm)
        and rep1.flags["sup_finite_consistent"]
        and rep2.flags["sup_finite_consistent"]
    )
    return BoundednessReport(p, weight_norm, rep1, rep2, bounded)


def composition_report(phi: FunctionSpec, p: float,
                       grid: BoundaryGrid | None = None,
                       levels: int = DEFAULT_LEVELS,
                       max_degree: int = DEFAULT_MAX_DEGREE,
                       keep_samples: bool = False) -> BoundednessReport:
    """Specialization psi = 1: criterion weights phi'' and phi'^2."""
    return s2p_boundedness_report(phi, UNIT, p, grid, levels, max_degree, keep_samples)


def multiplication_report(psi: FunctionSpec, p: float,
                          grid: BoundaryGrid | None = None,
                          levels: int = DEFAULT_LEVELS,
                          max_degree: int = DEFAULT_MAX_DEGREE,
                          keep_samples: bool = False) -> BoundednessReport:
    """Specialization phi = id: criterion weights 2 psi' and psi."""
    return s2p_boundedness_report(IDENTITY_MAP, psi, p, grid, levels, max_degree, keep_samples)


def compactness_trace(phi: FunctionSpec, psi: FunctionSpec, p: float,
                      grid: BoundaryGrid | None = None,
                      levels: int = DEFAULT_LEVELS,
                      max_degree: int = DEFAULT_MAX_DEGREE,
                      keep_samples: bool = False) -> CompactnessReport:
    """kappa(eps) traces for weights psi'', 2 psi' phi' + psi phi'', psi phi'^2.

    All three vanishing as eps -> 0 is the compactness-consistent verdict;
    at p = 1 the verdict is flagged criterion-only.
    """
    g = grid if grid is not None else default_grid()
    phi_fn = expanded(phi, _symbol_degree(phi, max_degree))
    psi_fn = expanded(psi, _symbol_degree(psi, max_degree))
    w0, w1, w2 = expansion_weights(phi_fn, psi_fn, max_degree)
    rep0, rep1, rep2 = _sweep(phi_fn, [w0, w1, w2], p, p, g, levels, keep_samples)
    compact = all(r.flags["limsup_zero_consistent"] for r in (rep0, rep1, rep2))
    return CompactnessReport(p, rep0, rep1, rep2, compact, p1_caveat=(p == 1.0))
