"""Seeded test corpus and the labelled operator catalog.

The corpus is the shared input set for norm comparisons, operator identities,
and lower-bound families: a few exact hand specs (constants, monomials,
reproducing kernels) plus a seeded batch of random polynomials with
coefficients drawn uniformly from the unit disc.

The catalog lists concrete operator instances with their expected
classification ("bounded", "compact", "unbounded") and the verification
roles each one serves.  Composition symbols are polynomials or damped
kernels so that self-map bounds and expansion weights stay exact; roles
tied to multiplication or to the integral pair ride on phi = id, which
touches the boundary everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryGrid, boundary_sup, default_grid
from .operators import _symbol_degree, expanded
from .series import AnalyticFunction, FunctionSpec, Kernel, Poly, Scale

CORPUS_SEED = 42
CORPUS_SIZE = 64
CORPUS_MAX_DEGREE = 16

#: kernels expand to this degree, leaving antiderivative headroom below 512
KERNEL_EXPAND_DEGREE = 384

UNIT_SPEC = Poly((1.0,))
IDENTITY_SPEC = Poly((0.0, 1.0))
SQUARE_SPEC = Poly((0.0, 0.0, 1.0))


def monomial(n: int) -> Poly:
    """z^n as a spec."""
    if n < 0:
        raise ValueError("monomial degree must be nonnegative")
    return Poly((0.0,) * n + (1.0,))


def seeded_polynomials(seed: int = CORPUS_SEED, count: int = CORPUS_SIZE,
                       max_degree: int = CORPUS_MAX_DEGREE) -> list[Poly]:
    """Random polynomial specs, coefficients uniform on the unit disc."""
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(count):
        deg = int(rng.integers(0, max_degree + 1))
        u = rng.random(deg + 1)
        theta = 2.0 * np.pi * rng.random(deg + 1)
        coeffs = np.sqrt(u) * np.exp(1j * theta)
        specs.append(Poly(tuple(complex(c) for c in coeffs)))
    return specs


def corpus_kernels() -> list[FunctionSpec]:
    """Reproducing-kernel specs spanning centers, powers, and orientations."""
    return [
        Kernel(0.3, 1.0),
        Kernel(0.5, 1.0),
        Kernel(0.7, 2.0),
        Kernel(0.4 + 0.4j, 1.0),
        Kernel(-0.6, 0.5),
    ]


def standard_corpus(seed: int = CORPUS_SEED) -> list[FunctionSpec]:
    """Hand specs, kernels, then the seeded polynomial batch."""
    hand: list[FunctionSpec] = [UNIT_SPEC, IDENTITY_SPEC, SQUARE_SPEC]
    return hand + corpus_kernels() + list(seeded_polynomials(seed))


def corpus_functions(specs, max_degree: int = KERNEL_EXPAND_DEGREE
                     ) -> list[AnalyticFunction]:
    """Expand corpus specs; polynomials keep their natural degree."""
    return [expanded(s, _symbol_degree(s, max_degree)) for s in specs]


# =============================================================================
# Operator catalog
# =============================================================================

ROLES = (
    "multiplier",
    "boundedness",
    "composition",
    "multiplication",
    "compactness",
    "volterra",
    "integral",
)


EXPECTED_TAGS = (
    "bounded-consistent",
    "unbounded-consistent",
    "compact-consistent",
    "not-compact-consistent",
)

#: tags whose operators are bounded (compactness refines boundedness)
BOUNDED_TAGS = ("bounded-consistent", "compact-consistent", "not-compact-consistent")


@dataclass(frozen=True)
class CatalogCase:
    """One labelled operator instance.

    For the "volterra" and "integral" roles the weight slot carries the
    symbol g of the integral operator; phi is the identity there.  q
    defaults to p; the unbounded cases are realized by raising q above p,
    which makes the criterion diverge along any kernel witness family.
    Every expected tag carries a note naming the oracle behind it.
    """

    name: str
    phi: FunctionSpec
    weight: FunctionSpec
    p: float
    expected: str
    roles: tuple[str, ...]
    note: str
    q: float | None = None

    def __post_init__(self) -> None:
        if self.expected not in EXPECTED_TAGS:
            raise ValueError(f"unknown expected tag {self.expected!r}")
        unknown = set(self.roles) - set(ROLES)
        if unknown:
            raise ValueError(f"unknown roles {sorted(unknown)!r}")
        if not self.note:
            raise ValueError("every case must name the oracle behind its expected tag")
        if self.q is None:
            object.__setattr__(self, "q", float(self.p))


def build_catalog() -> list[CatalogCase]:
    affine = Poly((0.5, 0.5))  # (1 + z) / 2, touches the circle at z = 1
    rotation = Poly((0.0, 1.0j))
    half = Poly((0.0, 0.5))
    kernel_map = Scale(0.4, Kernel(0.5, 1.0))  # sup modulus 0.8, strict self-map
    shrunk_square = Scale(0.7, SQUARE_SPEC)
    scaled_rotation = Poly((0.0, 0.6 * np.exp(1j * np.pi / 4)))

    return [
        # multipliers on phi = id
        CatalogCase("mult-const-half", IDENTITY_SPEC, Poly((0.5,)), 2.0,
                    "bounded-consistent", ("multiplier", "multiplication"),
                    "scalar multiple of the identity; norm |c| by homogeneity"),
        CatalogCase("mult-identity-z", IDENTITY_SPEC, IDENTITY_SPEC, 2.0,
                    "bounded-consistent", ("multiplier", "multiplication"),
                    "coefficient shift on the monomial basis; Parseval oracle"),
        CatalogCase("mult-affine", IDENTITY_SPEC, affine, 2.0,
                    "bounded-consistent", ("multiplier", "multiplication"),
                    "polynomial symbol touching the circle; sup-bound oracle"),
        CatalogCase("mult-square-p1", IDENTITY_SPEC, SQUARE_SPEC, 1.0,
                    "bounded-consistent", ("multiplier", "multiplication"),
                    "monomial symbol at p = 1; norm equality for shifted monomials"),
        # compositions and weighted compositions
        CatalogCase("comp-identity", IDENTITY_SPEC, UNIT_SPEC, 2.0,
                    "not-compact-consistent",
                    ("boundedness", "composition", "compactness"),
                    "identity operator: norm 1 and z^n probe ratio is constant 1"),
        CatalogCase("comp-rotation", rotation, UNIT_SPEC, 2.0,
                    "not-compact-consistent",
                    ("boundedness", "composition", "compactness"),
                    "rotation is unitary on every norm component; probe ratio 1"),
        CatalogCase("comp-half-disc", half, UNIT_SPEC, 2.0,
                    "compact-consistent",
                    ("multiplier", "boundedness", "composition", "compactness"),
                    "strict contraction: closed-form trace (1-|a|^2)/(1-|a|^2/4) -> 0"),
        CatalogCase("comp-square", SQUARE_SPEC, UNIT_SPEC, 2.0,
                    "not-compact-consistent",
                    ("boundedness", "composition", "compactness"),
                    "two-to-one circle cover: criterion plateau 4^p, probe ratio ~ 4"),
        CatalogCase("comp-affine", affine, UNIT_SPEC, 2.0,
                    "bounded-consistent", ("boundedness", "composition"),
                    "boundary contact at z = 1 with slope 1/2; trace plateaus near 2"),
        CatalogCase("comp-kernel-map", kernel_map, UNIT_SPEC, 2.0,
                    "compact-consistent", ("boundedness", "compactness"),
                    "kernel-built symbol with sup modulus 0.8; strict contraction"),
        CatalogCase("wcomp-square-affine", SQUARE_SPEC, affine, 2.0,
                    "bounded-consistent", ("multiplier", "boundedness"),
                    "polynomial weight and cover map; both weight sups finite by continuity"),
        CatalogCase("wcomp-vanish", half, SQUARE_SPEC, 4.0,
                    "compact-consistent", ("boundedness", "compactness"),
                    "strict contraction carries any polynomial weight to a compact operator"),
        CatalogCase("wcomp-rot-cubic", rotation, monomial(3), 2.0,
                    "bounded-consistent", ("boundedness",),
                    "unitary symbol times monomial weight; norm equals s2p norm of z^3"),
        CatalogCase("wcomp-kernel-weight", IDENTITY_SPEC, Kernel(0.95, 2.0), 2.0,
                    "bounded-consistent", ("boundedness",),
                    "large but finite weight data; flags follow the two weight sups"),
        CatalogCase("wcomp-affine-pair", affine, affine, 2.0,
                    "bounded-consistent", ("boundedness",),
                    "symbol and weight share the boundary contact point z = 1"),
        # strict contractions at other parameters
        CatalogCase("compact-scaled-rot", scaled_rotation, UNIT_SPEC, 2.0,
                    "compact-consistent", ("compactness",),
                    "modulus 0.6 rotation: probe ratio decays like n^2 0.6^n"),
        CatalogCase("compact-shrunk-square", shrunk_square, affine, 2.0,
                    "compact-consistent", ("compactness",),
                    "sup modulus 0.7 square map under a boundary-touching weight"),
        CatalogCase("compact-p1-caveat", half, UNIT_SPEC, 1.0,
                    "compact-consistent", ("compactness",),
                    "strict contraction at p = 1; trace verdict is criterion-only"),
        # exponent-raising embeddings: the criterion diverges like a power of 1/eps
        CatalogCase("unbounded-embed-q4", IDENTITY_SPEC, UNIT_SPEC, 2.0,
                    "unbounded-consistent", ("boundedness",),
                    "kernel witnesses have norm ratio (1-|a|^2)^(1/q-1/p) -> infinity",
                    q=4.0),
        CatalogCase("unbounded-embed-q2", IDENTITY_SPEC, UNIT_SPEC, 1.0,
                    "unbounded-consistent", ("boundedness",),
                    "same witness family, p = 1 into q = 2",
                    q=2.0),
        # integral pair, weight slot = g
        CatalogCase("volterra-linear", IDENTITY_SPEC, IDENTITY_SPEC, 2.0,
                    "bounded-consistent", ("volterra",),
                    "g = z: image of 1 is z, norm identity holds termwise"),
        CatalogCase("volterra-quadratic", IDENTITY_SPEC, SQUARE_SPEC, 2.0,
                    "bounded-consistent", ("volterra",),
                    "g = z^2: image of 1 is z^2 with norm 2 = s2p norm of g"),
        CatalogCase("volterra-affine", IDENTITY_SPEC, affine, 2.0,
                    "bounded-consistent", ("volterra",),
                    "affine g touching the circle; identity oracle minus |g(0)|"),
        CatalogCase("volterra-kernel", IDENTITY_SPEC, Scale(0.25, Kernel(0.5, 1.0)), 2.0,
                    "bounded-consistent", ("volterra",),
                    "damped kernel symbol; geometric-series norm oracle"),
        CatalogCase("integral-linear", IDENTITY_SPEC, IDENTITY_SPEC, 2.0,
                    "bounded-consistent", ("integral",),
                    "g = z: image of z is z^2/2, matching the first-derivative norm of g"),
        CatalogCase("integral-affine", IDENTITY_SPEC, affine, 2.0,
                    "bounded-consistent", ("integral",),
                    "affine g: term-by-term antiderivative oracle"),
        CatalogCase("integral-kernel", IDENTITY_SPEC, Scale(0.25, Kernel(0.3, 1.0)), 4.0,
                    "bounded-consistent", ("integral",),
                    "damped kernel symbol at p = 4; expansion-tail certified"),
    ]


def cases_for_role(role: str, catalog: list[CatalogCase] | None = None) -> list[CatalogCase]:
    if role not in ROLES:
        raise ValueError(f"unknown role {role!r}")
    cat = build_catalog() if catalog is None else catalog
    return [c for c in cat if role in c.roles]


def wcomp_cases(catalog: list[CatalogCase] | None = None) -> list[CatalogCase]:
    """Cases whose (phi, weight) slots genuinely form a weighted composition."""
    cat = build_catalog() if catalog is None else catalog
    return [c for c in cat if not ({"volterra", "integral"} & set(c.roles))]


def touches_boundary(phi: FunctionSpec, grid: BoundaryGrid | None = None) -> bool:
    """True when sup |phi| on the circle is within 1e-6 of one."""
    g = grid if grid is not None else default_grid()
    fn = expanded(phi, _symbol_degree(phi, KERNEL_EXPAND_DEGREE))
    return boundary_sup(fn, g) > 1.0 - 1e-6
