"""Integral means and norms for the disc function scales.

The scale runs: disc-algebra sup norm, the p-mean norm on the boundary
(`hp_norm`), the derivative-shifted norm `sp_norm` = |f(0)| + hp_norm(f'),
and the order-2 norm `s2p_norm` = |f(0)| + |f'(0)| + hp_norm(f'').  For the
stored truncations the boundary p-mean at r = 1 is the norm: every stored
function is analytic past the closed disc, so the increasing circle means
attain their sup at the boundary.

Quadrature accuracy is reported as a doubling estimate (M vs 2M sample
agreement) rather than claimed a priori; for even integer p and polynomial
data the M-point mean is exact once M exceeds the trigonometric degree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryGrid, boundary_sup, default_grid
from .errors import InvalidRadius, PointOutsideOpenDisc
from .series import AnalyticFunction, derivative, evaluate

#: space tags accepted by :func:`space_norm`
SPACE_TAGS = ("hp", "sp", "s2p", "alg")


@dataclass(frozen=True)
class NormParams:
    """Which norm to use: space tag plus integrability exponent p >= 1."""

    space: str
    p: float = 2.0

    def __post_init__(self) -> None:
        if self.space not in SPACE_TAGS:
            raise ValueError(f"space must be one of {SPACE_TAGS}, got {self.space!r}")
        if not self.p >= 1.0:
            raise ValueError(f"exponent p must be >= 1, got {self.p}")


def integral_mean(f: AnalyticFunction, p: float, r: float, grid: BoundaryGrid) -> float:
    """(1/M) sum_j |f(r w_j)|^p over the grid circle of radius r in (0, 1]."""
    if not 0.0 < r <= 1.0:
        raise InvalidRadius(f"circle radius must lie in (0, 1], got {r}")
    if not p >= 1.0:
        raise ValueError(f"exponent p must be >= 1, got {p}")
    vals = np.abs(evaluate(f, r * grid.points))
    return float(np.mean(vals ** p))


def hp_norm(f: AnalyticFunction, p: float, grid: BoundaryGrid | None = None) -> float:
    """Boundary p-mean norm, the r -> 1 limit of the circle means."""
    g = grid if grid is not None else default_grid()
    return integral_mean(f, p, 1.0, g) ** (1.0 / p)


def hp_norm_with_error(f: AnalyticFunction, p: float,
                       grid: BoundaryGrid | None = None) -> tuple[float, float]:
    """Norm at M samples plus the doubling error estimate |v_M - v_2M|."""
    g = grid if grid is not None else default_grid()
    v = hp_norm(f, p, g)
    v2 = hp_norm(f, p, g.doubled())
    return v, abs(v - v2)


def sp_norm(f: AnalyticFunction, p: float, grid: BoundaryGrid | None = None) -> float:
    """|f(0)| + hp_norm(f', p)."""
    return abs(complex(f.coeffs[0])) + hp_norm(derivative(f), p, grid)


def s2p_norm(f: AnalyticFunction, p: float, grid: BoundaryGrid | None = None) -> float:
    """|f(0)| + |f'(0)| + hp_norm(f'', p)."""
    c1 = complex(f.coeffs[1]) if len(f.coeffs) > 1 else 0.0j
    return (
        abs(complex(f.coeffs[0]))
        + abs(c1)
        + hp_norm(derivative(derivative(f)), p, grid)
    )


def space_norm(f: AnalyticFunction, params: NormParams,
               grid: BoundaryGrid | None = None) -> float:
    """Dispatch on the space tag; 'alg' is the boundary sup norm."""
    g = grid if grid is not None else default_grid()
    if params.space == "hp":
        return hp_norm(f, params.p, g)
    if params.space == "sp":
        return sp_norm(f, params.p, g)
    if params.space == "s2p":
        return s2p_norm(f, params.p, g)
    return boundary_sup(f, g)


# =============================================================================
# Interior growth profiles
# =============================================================================


@dataclass(frozen=True, eq=False)
class GrowthProfile:
    """Weighted derivative moduli |f^(k)(z)| (1-|z|^2)^(k-1+1/p) on a z-grid.

    max_ratio is the largest sample value: the empirically attained growth
    constant relative to the (1-|z|^2) blowup rate.
    """

    k: int
    points: np.ndarray
    values: np.ndarray
    max_ratio: float

    @property
    def samples(self) -> list[tuple[complex, float]]:
        return [(complex(z), float(v)) for z, v in zip(self.points, self.values)]


def default_growth_grid() -> np.ndarray:
    """32 radii 1 - 2^(-k/4) (capped at 0.99) crossed with 64 angles."""
    radii = np.minimum(1.0 - 2.0 ** (-np.arange(32) / 4.0), 0.99)
    angles = np.exp(2j * np.pi * np.arange(64) / 64)
    return (radii[:, None] * angles[None, :]).ravel()


def growth_profile(f: AnalyticFunction, p: float, k: int,
                   z_grid: np.ndarray | None = None) -> GrowthProfile:
    """Sample the growth-weighted modulus of the k-th derivative, k in {0,1,2}."""
    if k not in (0, 1, 2):
        raise ValueError(f"derivative order k must be 0, 1 or 2, got {k}")
    if not p >= 1.0:
        raise ValueError(f"exponent p must be >= 1, got {p}")
    pts = default_growth_grid() if z_grid is None else np.asarray(z_grid, dtype=np.complex128)
    if np.any(np.abs(pts) >= 1.0):
        raise PointOutsideOpenDisc(
            f"growth samples must satisfy |z| < 1, got |z| = {np.max(np.abs(pts)):.6f}"
        )
    g = f
    for _ in range(k):
        g = derivative(g)
    weight = (1.0 - np.abs(pts) ** 2) ** (k - 1 + 1.0 / p)
    vals = np.abs(evaluate(g, pts)) * weight
    return GrowthProfile(k, pts, vals, float(np.max(vals)))
