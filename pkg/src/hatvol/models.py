"""Singularity models on which the invariants are computed.

Three shapes: a monomial pair (affine space with coordinate-hyperplane
boundary), a Q-Gorenstein toric cone, and the affine cone over a
polarized toric Fano. All valuations are torus-equivariant weight
valuations, so every infimum in this package ranges over a
finite-dimensional rational parameter space; equivariant values are
upper bounds for the corresponding unrestricted infima and are flagged
as such in reports.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import geometry, linalg
from .errors import ValidationError
from .rationals import parse_rational


@dataclass(frozen=True)
class MonomialPair:
    """Affine n-space with boundary sum(a_i H_i), coefficients in [0, 1)."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("invalid-dimension", "dimension must be positive")
        coeffs = tuple(parse_rational(a) for a in self.coeffs)
        if len(coeffs) != self.n:
            raise ValidationError("dimension-mismatch", "need one coefficient per coordinate hyperplane")
        if any(a < 0 or a >= 1 for a in coeffs):
            raise ValidationError("invalid-coefficient", "boundary coefficients must lie in [0, 1)")
        object.__setattr__(self, "coeffs", coeffs)

    def to_json(self):
        from .rationals import format_rational

        return {"type": "monomial_pair", "n": self.n, "coeffs": [format_rational(a) for a in self.coeffs]}


class ToricSingularity:
    """A Q-Gorenstein toric cone with its Gorenstein covector.

    The covector m pairs to one with every primitive ray; it exists and
    is unique exactly when the singularity is Q-Gorenstein.
    """

    __slots__ = ("cone", "m_covector", "_dual")

    def __init__(self, cone):
        if not isinstance(cone, geometry.Cone):
            cone = geometry.Cone(cone)
        if not (cone.is_full_dimensional and cone.is_pointed):
            raise ValidationError("invalid-cone", "toric singularities need a pointed full-dimensional cone")
        self.cone = cone
        rows = [list(map(Fraction, r)) for r in cone.rays]
        rhs = [Fraction(1)] * len(rows)
        m = linalg.solve_affine(rows, rhs, cone.dim)
        if m is None or any(linalg.dot(m, r) != 1 for r in cone.rays):
            raise ValidationError("not-q-gorenstein", "no covector pairs to one with every ray")
        self.m_covector = m
        self._dual = cone.dual()

    @property
    def n(self):
        return self.cone.dim

    @property
    def dual_cone(self):
        return self._dual

    def is_interior(self, xi):
        return all(linalg.dot(u, xi) > 0 for u in self._dual.rays)

    def to_json(self):
        return {"type": "toric", "rays": [list(r) for r in self.cone.rays]}

    def __repr__(self):
        return f"ToricSingularity(rays={list(self.cone.rays)})"


@dataclass(frozen=True)
class FanoConeInput:
    """A polarized toric Fano base: lattice moment polytope plus the
    Cartier index r of the polarization."""

    polytope: geometry.ConvexBody
    r: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValidationError("invalid-index", "polarization index r must be a positive integer")
        body = self.polytope
        if not isinstance(body, geometry.ConvexBody):
            body = geometry.convex_hull(body)
            object.__setattr__(self, "polytope", body)
        if not body.is_full_dimensional:
            raise ValidationError("degenerate-body", "moment polytope must be full-dimensional")
        for v in body.vertices:
            if any(x.denominator != 1 for x in v):
                raise ValidationError("invalid-polytope", "moment polytope must have lattice vertices")

    @property
    def base_dim(self):
        return self.polytope.dim

    def to_json(self):
        return {
            "type": "fano_cone",
            "polytope": [[int(x) for x in v] for v in self.polytope.vertices],
            "r": self.r,
        }


@dataclass(frozen=True)
class WeightValuation:
    """A torus-equivariant valuation: positive weights on a monomial
    pair, or an interior lattice-tensor-Q point of the cone on a toric
    singularity."""

    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(parse_rational(w) for w in self.weights))

    def scaled(self, factor):
        factor = parse_rational(factor)
        return WeightValuation(tuple(w * factor for w in self.weights))


def log_discrepancy(model, valuation):
    """Log discrepancy A(v); linear in the weights.

    Monomial pair: sum (1 - a_i) w_i. Toric: <m, xi> for the Gorenstein
    covector m.
    """
    w = valuation.weights
    if isinstance(model, MonomialPair):
        if len(w) != model.n:
            raise ValidationError("dimension-mismatch", "weight vector has wrong length")
        if any(x <= 0 for x in w):
            raise ValidationError("invalid-weight", "monomial valuations need strictly positive weights")
        return sum((1 - a) * wi for a, wi in zip(model.coeffs, w))
    if isinstance(model, ToricSingularity):
        if len(w) != model.n:
            raise ValidationError("dimension-mismatch", "weight vector has wrong length")
        if not model.is_interior(w):
            raise ValidationError("boundary-valuation", "weight vector must lie in the cone interior")
        return linalg.dot(model.m_covector, w)
    raise ValidationError("invalid-model", f"unsupported model {type(model).__name__}")


def valuation_volume(model, valuation):
    """Volume of the valuation.

    Monomial pair: 1 / prod(w_i). Toric: n! times the exact volume of
    the dual cone truncated at pairing one against the weight vector.
    """
    w = valuation.weights
    if isinstance(model, MonomialPair):
        if any(x <= 0 for x in w):
            raise ValidationError("invalid-weight", "monomial valuations need strictly positive weights")
        return 1 / math.prod(w)
    if isinstance(model, ToricSingularity):
        if not model.is_interior(w):
            raise ValidationError("infinite-volume", "volume is finite only for interior weight vectors")
        body = truncated_dual_body(model, w)
        return math.factorial(model.n) * body.volume()
    raise ValidationError("invalid-model", f"unsupported model {type(model).__name__}")


def truncated_dual_body(model, xi):
    """The dual cone cut at {u : <xi, u> <= 1}, as a convex body."""
    points = [tuple(Fraction(0) for _ in range(model.n))]
    for ray in model.dual_cone.rays:
        level = linalg.dot(xi, ray)
        points.append(tuple(Fraction(x) / level for x in ray))
    return geometry.convex_hull(points)


def normalized_volume_of_valuation(model, valuation):
    """A(v)^n vol(v), the quantity whose infimum is the normalized volume."""
    n = model.n if isinstance(model, (MonomialPair, ToricSingularity)) else None
    if n is None:
        raise ValidationError("invalid-model", f"unsupported model {type(model).__name__}")
    return log_discrepancy(model, valuation) ** n * valuation_volume(model, valuation)


def cone_construction(fano):
    """Affine cone over the polarized base: the cone dual to
    Cone(polytope x {1}), with its Gorenstein covector verified."""
    from .errors import InvariantViolationError

    gens = []
    for v in fano.polytope.vertices:
        gens.append(tuple(int(x) for x in v) + (1,))
    sigma_dual = geometry.Cone(gens)
    sigma = sigma_dual.dual()
    try:
        return ToricSingularity(sigma)
    except ValidationError as exc:
        # cones over polarized bases are Q-Gorenstein by construction
        raise InvariantViolationError(
            "cone-construction", f"constructed cone failed validation: {exc}"
        ) from exc


def fano_degree_bound(fano):
    """(n-1)! vol(polytope) / r^n, the self-intersection bound for the
    cone vertex."""
    n = fano.base_dim + 1
    return math.factorial(n - 1) * fano.polytope.volume() / Fraction(fano.r) ** n


def anticanonical_polytope(fano):
    """Moment polytope of the anticanonical class, polytope / r."""
    scaled = [tuple(Fraction(x, fano.r) for x in v) for v in fano.polytope.vertices]
    return geometry.convex_hull(scaled)


def toric_kss_oracle(polytope):
    """Barycenter criterion for toric K-semistability (boundary-free case).

    The input is the anticanonical moment polytope; the verdict is True
    exactly when its barycenter coincides with its unique interior
    lattice point.
    """
    if not isinstance(polytope, geometry.ConvexBody):
        polytope = geometry.convex_hull(polytope)
    if not polytope.is_full_dimensional:
        raise ValidationError("degenerate-body", "anticanonical polytope must be full-dimensional")
    interior = []
    box = [polytope.coordinate_range(axis) for axis in range(polytope.dim)]
    ranges = [range(math.ceil(lo), math.floor(hi) + 1) for lo, hi in box]
    import itertools as _it

    for u in _it.product(*ranges):
        if polytope.contains(u, strict=True):
            interior.append(u)
    if len(interior) != 1:
        raise ValidationError(
            "not-anticanonical-polytope",
            f"expected exactly one interior lattice point, found {len(interior)}",
        )
    center = tuple(Fraction(x) for x in interior[0])
    return polytope.barycenter() == center


def load_model(data):
    """Instantiate a model from its JSON document (three shapes)."""
    try:
        kind = data["type"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("invalid-model-json", "model document needs a 'type' field") from exc
    if kind == "monomial_pair":
        return MonomialPair(n=int(data["n"]), coeffs=tuple(data["coeffs"]))
    if kind == "toric":
        return ToricSingularity(geometry.Cone(data["rays"]))
    if kind == "fano_cone":
        body = geometry.convex_hull(data["polytope"])
        return FanoConeInput(polytope=body, r=int(data.get("r", 1)))
    raise ValidationError("invalid-model-json", f"unknown model type {kind!r}")
