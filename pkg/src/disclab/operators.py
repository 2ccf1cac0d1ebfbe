"""Weighted composition and integral-type operators on the disc scales.

The general operator multiplies by a weight after composing with a disc
self-map; composition and multiplication are its two specializations.  The
two integral-type operators antidifferentiate f g' and f' g respectively,
both pinned to 0 at the origin.

The order-2 norm of an image is controlled by the three-term expansion of
its second derivative:

    (psi (f o phi))'' = psi'' (f o phi)
                      + (2 psi' phi' + psi phi'') (f' o phi)
                      + psi phi'^2 (f'' o phi)

whose weights are exactly the symbols fed to the boundedness criterion.
Operator-norm estimates come from below only: test-function ratios, and
largest singular values of finite matrix sections at p = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .boundary import BoundaryGrid, default_grid
from .errors import BasisTooLarge, EmptyFamily, ZeroNormMember
from .series import (
    DEFAULT_MAX_DEGREE,
    AnalyticFunction,
    FunctionSpec,
    Kernel,
    Poly,
    antiderivative,
    compose,
    derivative,
    expand,
    multiply,
    spec_from_json,
    spec_to_json,
)
from .spaces import NormParams, space_norm

#: spec of the constant-one function (weight of a plain composition)
UNIT = Poly((1.0,))

#: spec of the identity self-map (symbol of a plain multiplication)
IDENTITY_MAP = Poly((0.0, 1.0))


# =============================================================================
# Operator specs and JSON round trip
# =============================================================================


@dataclass(frozen=True)
class WeightedComposition:
    phi: FunctionSpec
    psi: FunctionSpec


@dataclass(frozen=True)
class Composition:
    phi: FunctionSpec


@dataclass(frozen=True)
class Multiplication:
    psi: FunctionSpec


@dataclass(frozen=True)
class Volterra:
    g: FunctionSpec


@dataclass(frozen=True)
class Integral:
    g: FunctionSpec


OperatorSpec = WeightedComposition | Composition | Multiplication | Volterra | Integral


def operator_to_json(op: OperatorSpec) -> dict:
    if isinstance(op, WeightedComposition):
        return {"kind": "wcomp", "phi": spec_to_json(op.phi), "psi": spec_to_json(op.psi)}
    if isinstance(op, Composition):
        return {"kind": "comp", "phi": spec_to_json(op.phi)}
    if isinstance(op, Multiplication):
        return {"kind": "mult", "psi": spec_to_json(op.psi)}
    if isinstance(op, Volterra):
        return {"kind": "volterra", "g": spec_to_json(op.g)}
    if isinstance(op, Integral):
        return {"kind": "integral", "g": spec_to_json(op.g)}
    raise TypeError(f"not an operator spec: {op!r}")


def operator_from_json(obj) -> OperatorSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("operator spec must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "wcomp":
        return WeightedComposition(spec_from_json(obj["phi"]), spec_from_json(obj["psi"]))
    if kind == "comp":
        return Composition(spec_from_json(obj["phi"]))
    if kind == "mult":
        return Multiplication(spec_from_json(obj["psi"]))
    if kind == "volterra":
        return Volterra(spec_from_json(obj["g"]))
    if kind == "integral":
        return Integral(spec_from_json(obj["g"]))
    raise ValueError(f"unknown operator spec kind: {kind!r}")


@lru_cache(maxsize=512)
def expanded(spec: FunctionSpec, degree: int) -> AnalyticFunction:
    """Cached spec expansion: operator symbols are reused across many calls."""
    return expand(spec, degree)


def _symbol_degree(spec: FunctionSpec, cap: int) -> int:
    """Natural expansion degree for an operator symbol: exact for polynomials."""
    if isinstance(spec, Poly):
        return min(len(spec.coeffs) - 1, cap)
    return cap


def apply(op: OperatorSpec, f: AnalyticFunction,
          max_degree: int = DEFAULT_MAX_DEGREE,
          grid: BoundaryGrid | None = None) -> AnalyticFunction:
    """Image of f under the operator, truncated at `max_degree`.

    Integral-type products are truncated one degree early so the closing
    antiderivative always fits under the cap.
    """
    if isinstance(op, WeightedComposition):
        phi = expanded(op.phi, _symbol_degree(op.phi, max_degree))
        psi = expanded(op.psi, _symbol_degree(op.psi, max_degree))
        return multiply(psi, compose(f, phi, max_degree, grid), max_degree)
    if isinstance(op, Composition):
        phi = expanded(op.phi, _symbol_degree(op.phi, max_degree))
        return compose(f, phi, max_degree, grid)
    if isinstance(op, Multiplication):
        psi = expanded(op.psi, _symbol_degree(op.psi, max_degree))
        return multiply(psi, f, max_degree)
    if isinstance(op, Volterra):
        g = expanded(op.g, _symbol_degree(op.g, max_degree))
        return antiderivative(multiply(f, derivative(g), max_degree - 1), max_degree)
    if isinstance(op, Integral):
        g = expanded(op.g, _symbol_degree(op.g, max_degree))
        return antiderivative(multiply(derivative(f), g, max_degree - 1), max_degree)
    raise TypeError(f"not an operator spec: {op!r}")


# =============================================================================
# Second-derivative expansion
# =============================================================================


@dataclass(frozen=True, eq=False)
class ExpansionTriple:
    """The three terms of (psi (f o phi))'', ordered by derivative of f."""

    t0: AnalyticFunction  # psi'' (f o phi)
    t1: AnalyticFunction  # (2 psi' phi' + psi phi'') (f' o phi)
    t2: AnalyticFunction  # psi phi'^2 (f'' o phi)

    def total(self, max_degree: int = DEFAULT_MAX_DEGREE) -> AnalyticFunction:
        n = max(len(t.coeffs) for t in (self.t0, self.t1, self.t2))
        out = np.zeros(n, dtype=np.complex128)
        for t in (self.t0, self.t1, self.t2):
            out[: len(t.coeffs)] += t.coeffs
        return AnalyticFunction(
            out[: max_degree + 1],
            min(t.decl_radius for t in (self.t0, self.t1, self.t2)),
            sum(t.tail_bound for t in (self.t0, self.t1, self.t2)),
            max(t.tail_ratio for t in (self.t0, self.t1, self.t2)),
        )


def expansion_weights(phi: AnalyticFunction, psi: AnalyticFunction,
                      max_degree: int = DEFAULT_MAX_DEGREE
                      ) -> tuple[AnalyticFunction, AnalyticFunction, AnalyticFunction]:
    """The symbols (psi'', 2 psi' phi' + psi phi'', psi phi'^2)."""
    dphi = derivative(phi)
    dpsi = derivative(psi)
    w0 = derivative(dpsi)
    cross = multiply(dpsi, dphi, max_degree)
    two_cross = AnalyticFunction(cross.coeffs * 2.0, cross.decl_radius,
                                 2.0 * cross.tail_bound, cross.tail_ratio)
    w1_second = multiply(psi, derivative(dphi), max_degree)
    n = max(len(two_cross.coeffs), len(w1_second.coeffs))
    acc = np.zeros(n, dtype=np.complex128)
    acc[: len(two_cross.coeffs)] += two_cross.coeffs
    acc[: len(w1_second.coeffs)] += w1_second.coeffs
    w1 = AnalyticFunction(acc, min(two_cross.decl_radius, w1_second.decl_radius),
                          two_cross.tail_bound + w1_second.tail_bound,
                          max(two_cross.tail_ratio, w1_second.tail_ratio))
    w2 = multiply(psi, multiply(dphi, dphi, max_degree), max_degree)
    return w0, w1, w2


def second_derivative_expansion(phi: AnalyticFunction, psi: AnalyticFunction,
                                f: AnalyticFunction,
                                max_degree: int = DEFAULT_MAX_DEGREE,
                                grid: BoundaryGrid | None = None) -> ExpansionTriple:
    """Expansion of (psi (f o phi))'' into its three derivative-order terms."""
    w0, w1, w2 = expansion_weights(phi, psi, max_degree)
    df = derivative(f)
    ddf = derivative(df)
    t0 = multiply(w0, compose(f, phi, max_degree, grid), max_degree)
    t1 = multiply(w1, compose(df, phi, max_degree, grid), max_degree)
    t2 = multiply(w2, compose(ddf, phi, max_degree, grid), max_degree)
    return ExpansionTriple(t0, t1, t2)


# =============================================================================
# Operator-norm estimates from below
# =============================================================================


def opnorm_lower_bound(op: OperatorSpec, in_space: NormParams, out_space: NormParams,
                       family, grid: BoundaryGrid | None = None,
                       max_degree: int = DEFAULT_MAX_DEGREE) -> float:
    """max over the family of ||op f||_out / ||f||_in: a certified lower bound."""
    members = list(family)
    if not members:
        raise EmptyFamily("operator-norm estimation needs at least one test function")
    g = grid if grid is not None else default_grid()
    best = 0.0
    for f in members:
        n_in = space_norm(f, in_space, g)
        if not n_in > 1e-14:
            raise ZeroNormMember(
                "every test function must have positive input-space norm"
            )
        best = max(best, space_norm(apply(op, f, max_degree, g), out_space, g) / n_in)
    return best


def default_test_family(p: float, max_degree: int = DEFAULT_MAX_DEGREE,
                        monomials: int = 33,
                        kernel_radii=(0.3, 0.5, 0.7, 0.9, 0.95)) -> list[AnalyticFunction]:
    """Monomials z^n (n < `monomials`) plus kernels Kernel(a, 2/p) on a radial grid.

    The low monomials 1, z, z^2 double as the witness functions of the
    norm-identity checks.
    """
    fam = [expanded(Poly((0.0,) * n + (1.0,)), n) for n in range(monomials)]
    for r in kernel_radii:
        fam.append(expanded(Kernel(complex(r), 2.0 / p), max_degree))
    return fam


def _shifted(f: AnalyticFunction, j: int, max_degree: int) -> AnalyticFunction:
    """z^j f, by coefficient shift (cheaper than a convolution)."""
    if j == 0:
        return f
    out = np.zeros(min(len(f.coeffs) + j, max_degree + 1), dtype=np.complex128)
    take = len(out) - j
    dropped = 0.0
    if take < len(f.coeffs):
        dropped = float(np.sum(np.abs(f.coeffs[take:])))
    if take > 0:
        out[j:] = f.coeffs[:take]
    return AnalyticFunction(out, f.decl_radius, f.tail_bound + dropped,
                            max(f.tail_ratio, 0.99 if dropped > 0 else 0.0))


def _monomial_images(op: OperatorSpec, n_basis: int, max_degree: int,
                     grid: BoundaryGrid | None) -> list[AnalyticFunction]:
    """op(z^j) for j < n_basis, sharing work across columns."""
    one = expanded(UNIT, 0)
    if isinstance(op, (WeightedComposition, Composition)):
        phi = expanded(op.phi, _symbol_degree(op.phi, max_degree))
        from .boundary import boundary_sup  # one self-map check for all columns
        from .errors import NotSelfMap
        g = grid if grid is not None else default_grid()
        sup_phi = boundary_sup(phi, g)
        if sup_phi > 1.0 + 1e-12:
            raise NotSelfMap(
                f"composition symbol must map the disc to itself; boundary sup = {sup_phi:.6f}"
            )
        psi = None
        if isinstance(op, WeightedComposition):
            psi = expanded(op.psi, _symbol_degree(op.psi, max_degree))
        images = []
        power = one
        for j in range(n_basis):
            if j > 0:
                power = multiply(power, phi, max_degree)
            images.append(multiply(psi, power, max_degree) if psi is not None else power)
        return images
    if isinstance(op, Multiplication):
        psi = expanded(op.psi, _symbol_degree(op.psi, max_degree))
        return [_shifted(psi, j, max_degree) for j in range(n_basis)]
    if isinstance(op, Volterra):
        dg = derivative(expanded(op.g, _symbol_degree(op.g, max_degree)))
        return [antiderivative(_shifted(dg, j, max_degree - 1), max_degree)
                for j in range(n_basis)]
    if isinstance(op, Integral):
        g_fn = expanded(op.g, _symbol_degree(op.g, max_degree))
        zero = AnalyticFunction(np.zeros(1, dtype=np.complex128))
        images = [zero]
        for j in range(1, n_basis):
            scaled = _shifted(g_fn, j - 1, max_degree - 1)
            scaled = AnalyticFunction(scaled.coeffs * float(j), scaled.decl_radius,
                                      scaled.tail_bound * j, scaled.tail_ratio)
            images.append(antiderivative(scaled, max_degree))
        return images
    raise TypeError(f"not an operator spec: {op!r}")


MAX_MATRIX_BASIS = 128


def opnorm_matrix_p2(op: OperatorSpec, space: str = "h2", n_basis: int = 64,
                     max_degree: int = DEFAULT_MAX_DEGREE,
                     grid: BoundaryGrid | None = None) -> float:
    """Largest singular value of the operator's n x n monomial matrix section.

    space "h2": monomials are orthonormal.  space "s2h": the equivalent
    Hilbert norm (|f(0)|^2 + |f'(0)|^2 + ||f''||_2^2)^(1/2), in which the
    monomials are orthogonal with weights 1, 1, j(j-1); it matches the sum
    norm within a factor sqrt(3) either way.  The section norm is a lower
    bound of the operator norm on the chosen space and is nondecreasing in
    n_basis.
    """
    if space not in ("h2", "s2h"):
        raise ValueError(f"matrix space must be 'h2' or 's2h', got {space!r}")
    if not 1 <= n_basis <= MAX_MATRIX_BASIS:
        raise BasisTooLarge(
            f"basis size must lie in 1..{MAX_MATRIX_BASIS}, got {n_basis}"
        )
    images = _monomial_images(op, n_basis, max_degree, grid)
    a = np.zeros((n_basis, n_basis), dtype=np.complex128)
    idx = np.arange(n_basis)
    if space == "h2":
        for j, img in enumerate(images):
            take = min(len(img.coeffs), n_basis)
            a[:take, j] = img.coeffs[:take]
    else:
        norms = np.where(idx >= 2, idx * (idx - 1.0), 1.0)
        for j, img in enumerate(images):
            h = np.zeros(n_basis, dtype=np.complex128)
            take = min(len(img.coeffs), n_basis)
            h[:take] = img.coeffs[:take]
            # <h, z^i>_s2h / n_i is h_0, h_1, then i(i-1) h_i; norms[0:2] = 1
            a[:, j] = h * norms / norms[j]
    return float(np.linalg.svd(a, compute_uv=False)[0])
