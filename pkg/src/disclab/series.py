"""Truncated Taylor series with certified tail bounds.

Functions analytic on a disc of radius > 1 are represented by their Taylor
coefficients at 0, truncated at a configurable maximum degree, together with
a certified bound on the sup of the neglected tail over the closed unit disc.
All coefficient arithmetic is numpy complex128; reductions go through
numpy's pairwise summation so results are deterministic for a fixed shape.

Construction goes through small declarative specs (`Poly`, `Kernel`, `Sum`,
`Product`, `Scale`) expanded by :func:`expand`.  `Kernel(a, s)` denotes
(1 - conj(a) z)^(-s), the reproducing-kernel style building block; its
truncation tail is geometric and is certified at expansion time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegreeTooSmall,
    KernelCenterTooLarge,
    MaxDegreeExceeded,
    NotSelfMap,
    PointOutsideClosedDisc,
)

DEFAULT_MAX_DEGREE = 512

# Slack for closed-disc membership tests, matching the self-map tolerance.
EVAL_SLACK = 1e-12

# Fallback geometric ratio when a tail's decay rate is unknown (derivatives
# of composed functions).  Conservative: inflates, never underestimates.
_FALLBACK_TAIL_RATIO = 0.99


@dataclass(frozen=True, eq=False)
class AnalyticFunction:
    """Truncated Taylor series with a certified tail bound.

    coeffs       complex128 Taylor coefficients c_0..c_N (read-only)
    decl_radius  radius of analyticity declared by the constructing spec (> 1)
    tail_bound   certified bound on sup_{|z|<=1} |truncation error|
    tail_ratio   geometric envelope ratio of the neglected coefficients
                 (|c_n| <= A * tail_ratio^n for n > N); 0 when the tail is
                 exactly zero or no envelope is known
    """

    coeffs: np.ndarray
    decl_radius: float = math.inf
    tail_bound: float = 0.0
    tail_ratio: float = 0.0

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=np.complex128, copy=True, order="C")
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficient array must be one-dimensional and nonempty")
        if not self.decl_radius > 1.0:
            raise ValueError("declared radius of analyticity must exceed 1")
        if self.tail_bound < 0.0:
            raise ValueError("tail bound must be nonnegative")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self) -> str:  # compact: corpora hold hundreds of these
        return (
            f"AnalyticFunction(degree={self.degree}, "
            f"tail_bound={self.tail_bound:.3e})"
        )


# =============================================================================
# Function specs and JSON round trip
# =============================================================================


@dataclass(frozen=True)
class Poly:
    """Finite Taylor polynomial given by its coefficients c_0..c_d."""

    coeffs: tuple[complex, ...]
    tail: float = 0.0  # carried when a truncated function is re-imported

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ValueError("polynomial spec needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))


@dataclass(frozen=True)
class Kernel:
    """(1 - conj(a) z)^(-s) with |a| <= 0.99, s > 0."""

    a: complex
    s: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "s", float(self.s))
        if abs(self.a) > 0.99:
            raise KernelCenterTooLarge(
                f"kernel center must satisfy |a| <= 0.99, got |a| = {abs(self.a):.6f}"
            )
        if not self.s > 0:
            raise ValueError("kernel exponent s must be positive")


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __post_init__(self) -> None:
        if len(self.terms) == 0:
            raise ValueError("sum spec needs at least one term")
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self) -> None:
        if len(self.factors) == 0:
            raise ValueError("product spec needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class Scale:
    c: complex
    inner: object

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", complex(self.c))


FunctionSpec = Poly | Kernel | Sum | Product | Scale


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _unpair(v) -> complex:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ValueError(f"expected a [re, im] pair, got {v!r}")
    return complex(float(v[0]), float(v[1]))


def spec_to_json(spec: FunctionSpec) -> dict:
    """Serialize a function spec to its JSON-ready dict form."""
    if isinstance(spec, Poly):
        out = {"kind": "poly", "coeffs": [_pair(c) for c in spec.coeffs]}
        if spec.tail > 0.0:
            out["tail_bound"] = spec.tail
        return out
    if isinstance(spec, Kernel):
        return {"kind": "kernel", "a": _pair(spec.a), "s": spec.s}
    if isinstance(spec, Sum):
        return {"kind": "sum", "terms": [spec_to_json(t) for t in spec.terms]}
    if isinstance(spec, Product):
        return {"kind": "product", "factors": [spec_to_json(f) for f in spec.factors]}
    if isinstance(spec, Scale):
        return {"kind": "scale", "c": _pair(spec.c), "inner": spec_to_json(spec.inner)}
    raise TypeError(f"not a function spec: {spec!r}")


def spec_from_json(obj) -> FunctionSpec:
    """Parse the JSON dict form of a function spec."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("function spec must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "poly":
        coeffs = tuple(_unpair(c) for c in obj["coeffs"])
        return Poly(coeffs, tail=float(obj.get("tail_bound", 0.0)))
    if kind == "kernel":
        return Kernel(_unpair(obj["a"]), float(obj["s"]))
    if kind == "sum":
        return Sum(tuple(spec_from_json(t) for t in obj["terms"]))
    if kind == "product":
        return Product(tuple(spec_from_json(f) for f in obj["factors"]))
    if kind == "scale":
        return Scale(_unpair(obj["c"]), spec_from_json(obj["inner"]))
    raise ValueError(f"unknown function spec kind: {kind!r}")


# =============================================================================
# Expansion
# =============================================================================


def _kernel_tail(abs_a: float, s: float, degree: int, last_term: float) -> tuple[float, float]:
    """Certified geometric tail for a truncated kernel expansion.

    Term ratios |c_{n+1}/c_n| = |a| (n+s)/(n+1) are bounded on n > degree by
    r = |a| * max(1, (degree+1+s)/(degree+2)); the neglected sum is then at
    most |c_{degree+1}| / (1-r).  Requires r < 1.
    """
    if abs_a == 0.0:
        return 0.0, 0.0
    r = abs_a * max(1.0, (degree + 1 + s) / (degree + 2))
    if r >= 1.0:
        raise DegreeTooSmall(
            "expansion degree too small to certify the kernel tail: "
            f"term ratio bound {r:.4f} >= 1 at degree {degree} (s = {s})"
        )
    first_neglected = last_term * abs_a * (degree + s) / (degree + 1)
    return first_neglected / (1.0 - r), r


def expand(spec: FunctionSpec, degree: int = DEFAULT_MAX_DEGREE) -> AnalyticFunction:
    """Expand a spec into coefficients c_0..c_degree with a certified tail.

    Polynomials are padded with zeros up to `degree`; kernels get the
    geometric tail bound; sums, products and scalings combine expansions of
    their children at the same degree, with product truncation charged to
    the tail.
    """
    if degree < 0:
        raise ValueError("expansion degree must be nonnegative")
    if isinstance(spec, Poly):
        if len(spec.coeffs) - 1 > degree:
            raise DegreeTooSmall(
                f"expansion degree {degree} below polynomial degree {len(spec.coeffs) - 1}"
            )
        out = np.zeros(degree + 1, dtype=np.complex128)
        out[: len(spec.coeffs)] = spec.coeffs
        return AnalyticFunction(out, math.inf, spec.tail,
                                _FALLBACK_TAIL_RATIO if spec.tail > 0 else 0.0)
    if isinstance(spec, Kernel):
        abar = np.conj(spec.a)
        n = np.arange(degree + 1)
        rising = np.ones(degree + 1)
        if degree >= 1:
            # b_n = b_{n-1} (n-1+s)/n, the rising-factorial binomials
            rising[1:] = np.cumprod((n[1:] - 1 + spec.s) / n[1:])
        coeffs = rising * abar ** n
        last = rising[-1] * abs(spec.a) ** degree
        tail, ratio = _kernel_tail(abs(spec.a), spec.s, degree, last)
        radius = math.inf if spec.a == 0 else 1.0 / abs(spec.a)
        return AnalyticFunction(coeffs, radius, tail, ratio)
    if isinstance(spec, Sum):
        parts = [expand(t, degree) for t in spec.terms]
        out = np.zeros(degree + 1, dtype=np.complex128)
        for p in parts:
            out[: len(p.coeffs)] += p.coeffs
        return AnalyticFunction(
            out,
            min(p.decl_radius for p in parts),
            math.fsum(p.tail_bound for p in parts),
            max(p.tail_ratio for p in parts),
        )
    if isinstance(spec, Product):
        parts = [expand(f, degree) for f in spec.factors]
        acc = parts[0]
        for p in parts[1:]:
            acc = multiply(acc, p, max_degree=degree)
        return acc
    if isinstance(spec, Scale):
        inner = expand(spec.inner, degree)
        return AnalyticFunction(
            inner.coeffs * spec.c,
            inner.decl_radius,
            inner.tail_bound * abs(spec.c),
            inner.tail_ratio,
        )
    raise TypeError(f"not a function spec: {spec!r}")


# =============================================================================
# Evaluation and calculus
# =============================================================================


def _trimmed(coeffs: np.ndarray) -> np.ndarray:
    """View without trailing zero coefficients (at least length 1)."""
    nz = np.nonzero(coeffs)[0]
    if len(nz) == 0:
        return coeffs[:1]
    return coeffs[: nz[-1] + 1]


def evaluate(f: AnalyticFunction, z):
    """Horner evaluation at points of the closed unit disc.

    Accepts a scalar or an ndarray; returns matching shape.  Points with
    |z| > 1 + 1e-12 are rejected: the tail bound is only certified on the
    closed disc.
    """
    pts = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(pts) > 1.0 + EVAL_SLACK):
        worst = np.max(np.abs(pts))
        raise PointOutsideClosedDisc(
            f"evaluation point must satisfy |z| <= 1 + 1e-12, got |z| = {worst:.6f}"
        )
    c = _trimmed(f.coeffs)
    acc = np.full(pts.shape, c[-1])
    for k in range(len(c) - 2, -1, -1):
        acc = acc * pts + c[k]
    if np.isscalar(z) or np.asarray(z).shape == ():
        return complex(acc)
    return acc


def coefficient_sum(f: AnalyticFunction) -> float:
    """sum |c_k|: certified bound for sup_{|z|<=1} |f| of the stored part."""
    return float(np.sum(np.abs(f.coeffs)))


def _derivative_tail(tail: float, ratio: float, degree: int) -> tuple[float, float]:
    """Tail of the derivative from the geometric envelope |c_n| <= A r^n.

    sum_{n>N} n |c_n| <= T ((N+1) - N r)/(1 - r).  When no envelope ratio is
    known the conservative fallback ratio is used.
    """
    if tail == 0.0:
        return 0.0, 0.0
    r = ratio if 0.0 < ratio < 1.0 else _FALLBACK_TAIL_RATIO
    new_tail = tail * ((degree + 1) - degree * r) / (1.0 - r)
    new_ratio = min(0.999, r * (degree + 2) / (degree + 1))
    return new_tail, new_ratio


def derivative(f: AnalyticFunction) -> AnalyticFunction:
    """Coefficient shift-and-scale derivative; degree drops by one."""
    if len(f.coeffs) == 1:
        tail, ratio = _derivative_tail(f.tail_bound, f.tail_ratio, f.degree)
        return AnalyticFunction(np.zeros(1, dtype=np.complex128),
                                f.decl_radius, tail, ratio)
    out = f.coeffs[1:] * np.arange(1, len(f.coeffs))
    tail, ratio = _derivative_tail(f.tail_bound, f.tail_ratio, f.degree)
    return AnalyticFunction(out, f.decl_radius, tail, ratio)


def _restoring_divide(x: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Componentwise x/n preferring quotients that multiply back to x bitwise.

    IEEE divide-then-multiply can be off by one ulp.  Where the correctly
    rounded quotient does not restore x, a one-ulp neighbor that does is
    used instead.  Some inputs lie outside the image of q -> fl(q*n)
    entirely (for example -0x1.43f2a959cc8bbp+0 under n = 10); those keep
    the correctly rounded quotient, whose product is one ulp off.
    """
    q = x / n
    for direction in (np.inf, -np.inf):
        bad = (q * n) != x
        if not bad.any():
            break
        cand = np.nextafter(q[bad], direction)
        hit = (cand * n[bad]) == x[bad]
        fixed = q[bad]
        fixed[hit] = cand[hit]
        q[bad] = fixed
    return q


def antiderivative(f: AnalyticFunction, max_degree: int = DEFAULT_MAX_DEGREE) -> AnalyticFunction:
    """Antiderivative vanishing at 0; degree grows by one.

    The degree N+1 result must fit under `max_degree`.  Differentiating the
    result restores every coefficient bitwise whenever a representable
    quotient exists (dyadic coefficients and small-index divisions always
    do) and to within one ulp otherwise; see `_restoring_divide`.
    """
    if f.degree + 1 > max_degree:
        raise MaxDegreeExceeded(
            f"antiderivative degree {f.degree + 1} exceeds the configured maximum {max_degree}"
        )
    n = np.arange(1, len(f.coeffs) + 1, dtype=np.float64)
    out = np.zeros(len(f.coeffs) + 1, dtype=np.complex128)
    out.real[1:] = _restoring_divide(f.coeffs.real.copy(), n)
    out.imag[1:] = _restoring_divide(f.coeffs.imag.copy(), n)
    # Termwise |c_n|/(n+1): the neglected sum shrinks by at least N+2.
    tail = f.tail_bound / (f.degree + 2)
    return AnalyticFunction(out, f.decl_radius, tail, f.tail_ratio)


def multiply(f: AnalyticFunction, g: AnalyticFunction,
             max_degree: int = DEFAULT_MAX_DEGREE) -> AnalyticFunction:
    """Cauchy product truncated at `max_degree`.

    Truncated product coefficients are charged to the tail along with the
    cross terms sup|f| tail_g + sup|g| tail_f (coefficient-sum sup bounds).
    """
    conv = np.convolve(f.coeffs, g.coeffs)
    dropped = 0.0
    if len(conv) - 1 > max_degree:
        dropped = float(np.sum(np.abs(conv[max_degree + 1:])))
        conv = conv[: max_degree + 1]
    tail = (
        coefficient_sum(f) * g.tail_bound
        + coefficient_sum(g) * f.tail_bound
        + f.tail_bound * g.tail_bound
        + dropped
    )
    ratio = max(f.tail_ratio, g.tail_ratio)
    if dropped > 0.0:
        ratio = max(ratio, _FALLBACK_TAIL_RATIO)
    return AnalyticFunction(conv, min(f.decl_radius, g.decl_radius), tail, ratio)


def _certified_compose_radius(f: AnalyticFunction, phi: AnalyticFunction) -> float:
    """Largest bisection-certified radius of analyticity for f(phi(z)).

    Uses the coefficient-sum bound sum |phi_k| rho^k <= (1 + R_f)/2 < R_f;
    falls back to a nominal margin above 1 when the bound certifies nothing.
    """
    if math.isinf(f.decl_radius):
        return phi.decl_radius
    target = 0.5 * (1.0 + f.decl_radius)
    mags = np.abs(phi.coeffs)
    powers = np.arange(len(mags))

    def grows_past(rho: float) -> bool:
        return float(np.sum(mags * rho ** powers)) + phi.tail_bound > target

    hi = min(phi.decl_radius, 4.0)
    lo = 1.0
    if grows_past(1.0 + 1e-9):
        return 1.0 + 1e-9
    if not grows_past(hi * (1.0 - 1e-12)):
        return hi
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if grows_past(mid):
            hi = mid
        else:
            lo = mid
    return lo


def compose(f: AnalyticFunction, phi: AnalyticFunction,
            max_degree: int = DEFAULT_MAX_DEGREE, grid=None) -> AnalyticFunction:
    """Taylor coefficients of f(phi(z)) by Horner on series.

    `phi` must map the closed disc into itself (boundary sup <= 1 + 1e-12,
    checked on `grid` or the default boundary grid).  Intermediate products
    are truncated at `max_degree` with the dropped mass charged to the tail.
    """
    from .boundary import boundary_sup, default_grid  # lazy: avoids module cycle

    sup_phi = boundary_sup(phi, grid if grid is not None else default_grid())
    if sup_phi > 1.0 + 1e-12:
        raise NotSelfMap(
            f"composition symbol must map the disc to itself; boundary sup = {sup_phi:.6f}"
        )

    c = _trimmed(f.coeffs)
    phi_c = _trimmed(phi.coeffs)
    acc = np.array([c[-1]], dtype=np.complex128)
    dropped = 0.0
    for k in range(len(c) - 2, -1, -1):
        acc = np.convolve(acc, phi_c)
        if len(acc) - 1 > max_degree:
            dropped += float(np.sum(np.abs(acc[max_degree + 1:])))
            acc = acc[: max_degree + 1].copy()
        acc[0] += c[k]
    # |f'| <= sum k |c_k| on the closed disc controls the phi-tail transfer.
    lipschitz = float(np.sum(np.arange(len(c)) * np.abs(c)))
    tail = f.tail_bound + lipschitz * phi.tail_bound + dropped
    ratio = 0.0
    if tail > 0.0:
        ratio = _FALLBACK_TAIL_RATIO
    return AnalyticFunction(acc, _certified_compose_radius(f, phi), tail, ratio)
