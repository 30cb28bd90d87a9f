"""The invariant engine.

Log canonical thresholds by exact linear programming, normalized
multiplicities, normalized-volume minimization (closed form on monomial
pairs, numeric with rational upgrade on toric cones), the normalized
colength functional with its convergence scans, and the comparison
probes that the verification suite drives.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import geometry, linalg, monomials, simplex
from .errors import InvariantViolationError, NonConvergedError, ValidationError
from .models import (
    FanoConeInput,
    MonomialPair,
    ToricSingularity,
    WeightValuation,
    anticanonical_polytope,
    cone_construction,
    fano_degree_bound,
    log_discrepancy,
    normalized_volume_of_valuation,
    toric_kss_oracle,
    valuation_volume,
)
from .rationals import format_rational, parse_rational

EQUIVARIANT_WARNING = (
    "equivariant value: the infimum ranges over torus-invariant data only, "
    "an upper bound for the unrestricted infimum"
)


# ---------------------------------------------------------------------------
# log canonical threshold


@dataclass(frozen=True)
class LctResult:
    value: Fraction
    minimizing_weight: tuple
    active_constraints: tuple  # generator exponents met with equality

    def to_payload(self):
        return {
            "value": format_rational(self.value),
            "minimizing_weight": [format_rational(w) for w in self.minimizing_weight],
            "active_constraints": [list(g) for g in self.active_constraints],
        }


def _newton_facets_2d(ideal):
    """Non-coordinate facets of the Newton polygon via the lower hull.

    Ideals without a pure power on some axis have an axis-parallel facet
    there in addition to the hull segments.
    """
    hull = []
    for p in sorted(ideal.gens):
        while len(hull) >= 2:
            ax, ay = hull[-2]
            bx, by = hull[-1]
            if (bx - ax) * (p[1] - by) - (by - ay) * (p[0] - bx) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    facets = []
    if hull[0][0] > 0:
        facets.append(((1, 0), hull[0][0]))
    if hull[-1][1] > 0:
        facets.append(((0, 1), hull[-1][1]))
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        normal = (y0 - y1, x1 - x0)
        facets.append((normal, normal[0] * x0 + normal[1] * y0))
    return facets


def howald_membership_value(ideal):
    """Largest t with the all-ones vector in t times the Newton polyhedron."""
    if ideal.n == 2:
        facets = _newton_facets_2d(ideal)
    else:
        facets = [(n, c) for n, c in ideal.newton_polyhedron().facets if c > 0]
    ones = tuple(1 for _ in range(ideal.n))
    return min(Fraction(linalg.dot(n, ones)) / c for n, c in facets)


def lct(model, ideal):
    """Log canonical threshold of a monomial ideal on a monomial pair.

    Computed as the exact covering program: minimize sum (1 - a_i) w_i
    over weight vectors w >= 0 with <w, u> >= 1 for every generator u.
    On the boundary-free model the independent Newton-polyhedron
    membership value is computed as well, and the two must agree.
    """
    if not isinstance(model, MonomialPair):
        raise ValidationError("invalid-model", "lct is computed on monomial pairs")
    if ideal.n != model.n:
        raise ValidationError("dimension-mismatch", "ideal and model dimensions differ")
    if ideal.is_unit:
        raise ValidationError("lct-undefined", "the unit ideal has no log canonical threshold")
    costs = [1 - a for a in model.coeffs]
    lp = simplex.solve_covering(costs, ideal.gens)
    if all(a == 0 for a in model.coeffs):
        member = howald_membership_value(ideal)
        if member != lp.value:
            raise InvariantViolationError(
                "lct-path-disagreement",
                f"linear program gave {lp.value}, membership value gave {member}",
                gens=[list(g) for g in ideal.gens],
            )
    return LctResult(
        value=lp.value,
        minimizing_weight=lp.weights,
        active_constraints=tuple(ideal.gens[i] for i in lp.active),
    )


def normalized_multiplicity(model, ideal):
    """lct^n times the Hilbert-Samuel multiplicity, exact."""
    return lct(model, ideal).value ** model.n * ideal.multiplicity()


# ---------------------------------------------------------------------------
# normalized volume


@dataclass(frozen=True)
class NormalizedVolumeResult:
    value: object  # Fraction when exact, float otherwise
    exact: bool
    method: str  # closed_form | exhaustive | numeric_slice
    minimizer: WeightValuation
    tolerance: float | None = None
    certificate: str | None = None
    numeric_value: float | None = None
    warnings: tuple = ()

    def float_value(self):
        return float(self.value)

    def to_payload(self):
        payload = {
            "value": format_rational(self.value) if self.exact else float(self.value),
            "exact": self.exact,
            "method": self.method,
            "minimizer": [format_rational(w) for w in self.minimizer.weights],
        }
        if self.tolerance is not None:
            payload["tolerance"] = self.tolerance
        if self.certificate is not None:
            payload["certificate"] = self.certificate
        return payload


def hvol_closed_form(model):
    """Normalized volume of a monomial pair: n^n prod(1 - a_i).

    The minimizer has weights 1/(n (1 - a_i)); the certificate records
    the arithmetic-geometric equality condition that all (1 - a_i) w_i
    coincide, which is verified exactly, as is the value against the
    reported minimizer.
    """
    if not isinstance(model, MonomialPair):
        raise ValidationError("invalid-model", "closed form applies to monomial pairs")
    n = model.n
    value = Fraction(n) ** n * math.prod(1 - a for a in model.coeffs)
    weights = tuple(1 / (n * (1 - a)) for a in model.coeffs)
    minimizer = WeightValuation(weights)
    terms = {(1 - a) * w for a, w in zip(model.coeffs, weights)}
    if terms != {Fraction(1, n)}:
        raise InvariantViolationError("am-gm-certificate", "equality condition failed at the closed-form minimizer")
    if normalized_volume_of_valuation(model, minimizer) != value:
        raise InvariantViolationError("closed-form-mismatch", "closed form disagrees with direct evaluation")
    return NormalizedVolumeResult(
        value=value,
        exact=True,
        method="closed_form",
        minimizer=minimizer,
        certificate="arithmetic-geometric equality: (1-a_i) w_i = 1/n for every i",
    )


class _ToricObjective:
    """Float and exact evaluators for the slice-restricted volume product.

    The dual cone is triangulated once; on the interior the objective is
    the smooth rational function
        f(xi) = <m, xi>^n * sum_T |det T| / prod_{d in T} <xi, d>.
    """

    def __init__(self, model):
        self.model = model
        self.n = model.n
        self.rays = model.cone.rays
        self.duals = list(model.dual_cone.rays)
        xi0 = tuple(sum(c) for c in zip(*self.rays))
        points = []
        for d in self.duals:
            level = linalg.dot(xi0, d)
            points.append(tuple(Fraction(x) / level for x in d))
        simplices = geometry._triangulate_indices(points, self.n - 1)
        self.simplices = []
        for tri in simplices:
            dets = abs(linalg.det([self.duals[i] for i in tri]))
            self.simplices.append((tri, dets))
        self.m = self.model.m_covector
        self._m_f = [float(x) for x in self.m]
        self._duals_f = [[float(x) for x in d] for d in self.duals]
        self._dets_f = [(tri, float(c)) for tri, c in self.simplices]

    def value_float(self, xi):
        a = sum(mf * x for mf, x in zip(self._m_f, xi))
        if a <= 0:
            return math.inf
        pairings = [sum(df[i] * xi[i] for i in range(self.n)) for df in self._duals_f]
        if any(p <= 1e-14 for p in pairings):
            return math.inf
        vol = 0.0
        for tri, c in self._dets_f:
            prod = 1.0
            for i in tri:
                prod *= pairings[i]
            vol += c / prod
        return a**self.n * vol

    def value_exact(self, xi):
        a = linalg.dot(self.m, xi)
        pairings = [linalg.dot(d, xi) for d in self.duals]
        vol = Fraction(0)
        for tri, c in self.simplices:
            prod = Fraction(1)
            for i in tri:
                prod *= pairings[i]
            vol += c / prod
        return a**self.n * vol

    def gradient_exact(self, xi):
        a = linalg.dot(self.m, xi)
        pairings = [linalg.dot(d, xi) for d in self.duals]
        vol = Fraction(0)
        dvol = [Fraction(0)] * self.n
        for tri, c in self.simplices:
            prod = Fraction(1)
            for i in tri:
                prod *= pairings[i]
            term = c / prod
            vol += term
            for axis in range(self.n):
                s = sum(Fraction(self.duals[i][axis]) / pairings[i] for i in tri)
                dvol[axis] -= term * s
        grad = []
        for axis in range(self.n):
            grad.append(self.n * self.m[axis] * a ** (self.n - 1) * vol + a**self.n * dvol[axis])
        return tuple(grad)


def _simplex_grid(vertices, subdivisions):
    """All barycentric lattice points of a simplex with given vertices."""
    r = len(vertices)
    dim = len(vertices[0])

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    out = []
    for comp in compositions(subdivisions, r):
        point = [0.0] * dim
        for weight, vert in zip(comp, vertices):
            for i in range(dim):
                point[i] += weight / subdivisions * vert[i]
        out.append(point)
    return out


def hvol_toric(model, tolerance=1e-9, max_iters=400, grid_depth=6):
    """Normalized volume of a toric singularity over interior weight vectors.

    The objective is scale invariant, so the search runs on the compact
    slice where the Gorenstein covector pairs to one, which is exactly
    the convex hull of the primitive rays. Recursive trisection grid
    refinement is followed by a Nelder-Mead polish; when the minimizer
    rounds to a nearby rational point of height at most 64 at which the
    exact gradient vanishes, the result is upgraded to an exact value
    computed through the independent hull-based volume.
    """
    if not isinstance(model, ToricSingularity):
        raise ValidationError("invalid-model", "expected a toric singularity")
    if tolerance <= 0:
        raise ValidationError("invalid-tolerance", "tolerance must be positive")
    objective = _ToricObjective(model)
    rays_f = [[float(x) for x in r] for r in model.cone.rays]
    nrays = len(rays_f)

    def eval_lambda(lam):
        xi = [sum(lam[j] * rays_f[j][i] for j in range(nrays)) for i in range(model.n)]
        return objective.value_float(xi), xi

    simplex_vertices = [[float(i == j) for j in range(nrays)] for i in range(nrays)]
    best_lam, best_val = None, math.inf
    for depth in range(grid_depth + 1):
        for lam in _simplex_grid(simplex_vertices, 6):
            val, _ = eval_lambda(lam)
            if val < best_val:
                best_val, best_lam = val, lam
        simplex_vertices = [
            [best_lam[i] + (v[i] - best_lam[i]) / 3.0 for i in range(nrays)]
            for v in simplex_vertices
        ]
    if best_lam is None or not math.isfinite(best_val):
        raise NonConvergedError("grid search found no interior point", best=None)

    from scipy.optimize import minimize as _nm_minimize

    def softmax(s):
        mx = max(s)
        exps = [math.exp(x - mx) for x in s]
        total = sum(exps)
        return [e / total for e in exps]

    def nm_objective(s):
        val, _ = eval_lambda(softmax(s))
        return val

    # polish, then restart from the polished point; convergence means the
    # restart no longer moves the value beyond the requested tolerance
    point = [math.log(max(x, 1e-12)) for x in best_lam]
    options = {"xatol": 1e-13, "fatol": abs(best_val) * 1e-15, "maxiter": max_iters * nrays, "maxfev": 4000}
    nm = _nm_minimize(nm_objective, point, method="Nelder-Mead", options=options)
    polish = _nm_minimize(nm_objective, nm.x, method="Nelder-Mead", options=options)
    moved = abs(float(polish.fun) - float(nm.fun))
    for candidate_run in (nm, polish):
        if candidate_run.fun < best_val:
            best_val = float(candidate_run.fun)
            best_lam = softmax(candidate_run.x)
    numeric_value = best_val
    converged = moved <= tolerance * max(1.0, abs(numeric_value))
    _, xi_best = eval_lambda(best_lam)

    # rational upgrade near a low-height rational point
    a_best = sum(float(m) * x for m, x in zip(model.m_covector, xi_best))
    xi_unit = [x / a_best for x in xi_best]
    candidate = tuple(Fraction(x).limit_denominator(64) for x in xi_unit)
    upgraded = None
    if model.is_interior(candidate):
        level = linalg.dot(model.m_covector, candidate)
        candidate = tuple(x / level for x in candidate)
        if objective.gradient_exact(candidate) == tuple(Fraction(0) for _ in range(model.n)):
            exact_value = normalized_volume_of_valuation(model, WeightValuation(candidate))
            if exact_value != objective.value_exact(candidate):
                raise InvariantViolationError(
                    "volume-path-disagreement",
                    "triangulation and hull volumes differ at the upgraded minimizer",
                )
            if abs(float(exact_value) - numeric_value) <= tolerance * max(1.0, abs(numeric_value)):
                upgraded = (exact_value, candidate)

    if upgraded is not None:
        value, xi = upgraded
        return NormalizedVolumeResult(
            value=value,
            exact=True,
            method="numeric_slice",
            minimizer=WeightValuation(xi),
            tolerance=tolerance,
            certificate="zero exact gradient at rational interior weights of height <= 64",
            numeric_value=numeric_value,
            warnings=(EQUIVARIANT_WARNING,),
        )

    if not converged:
        raise NonConvergedError(
            "restarted polish still moving beyond tolerance",
            best=numeric_value,
        )
    reported = tuple(Fraction(x).limit_denominator(10**9) for x in xi_unit)
    level = linalg.dot(model.m_covector, reported)
    reported = tuple(x / level for x in reported)
    return NormalizedVolumeResult(
        value=numeric_value,
        exact=False,
        method="numeric_slice",
        minimizer=WeightValuation(reported),
        tolerance=tolerance,
        numeric_value=numeric_value,
        warnings=(EQUIVARIANT_WARNING,),
    )


def hvol(model, **options):
    """Normalized volume of any supported model."""
    if isinstance(model, MonomialPair):
        return hvol_closed_form(model)
    if isinstance(model, ToricSingularity):
        return hvol_toric(model, **options)
    if isinstance(model, FanoConeInput):
        return hvol_toric(cone_construction(model), **options)
    raise ValidationError("invalid-model", f"unsupported model {type(model).__name__}")


# ---------------------------------------------------------------------------
# normalized colength


DEFAULT_WEIGHT_RATIOS = (
    Fraction(1),
    Fraction(5, 4),
    Fraction(4, 3),
    Fraction(3, 2),
    Fraction(5, 3),
    Fraction(2),
    Fraction(5, 2),
    Fraction(3),
    Fraction(4),
)


def default_scan_constant(n):
    """Default colength fraction c = e(m) / (4 n!), always feasible."""
    return Fraction(1, 4 * math.factorial(n))


def _staircase_key(ideal):
    return ideal.staircase().points


def normalized_colength(model, c, k, mode="exact", budgets=None, weight_ratios=DEFAULT_WEIGHT_RATIOS):
    """The normalized colength at level k: n! times the least
    lct^n * colength over ideals between the k-th power of the maximal
    ideal and the maximal ideal with colength at least c k^n.

    Exact mode enumerates every monomial staircase in range (refusing
    beyond the configured budget); upper mode scans valuation ideals of
    a rational weight grid and therefore only bounds the infimum from
    above. Ties are broken by the lexicographically least staircase.
    """
    if not isinstance(model, MonomialPair):
        raise ValidationError("invalid-model", "normalized colength is computed on monomial pairs")
    c = parse_rational(c)
    if c <= 0:
        raise ValidationError("infeasible-c", "c must be positive")
    if k < 2:
        raise ValidationError("invalid-exponent", "k must be at least 2")
    n = model.n
    min_colength = math.ceil(c * Fraction(k) ** n)
    full = monomials.maximal_power(n, k).colength()
    if min_colength > full:
        raise ValidationError(
            "infeasible-c",
            f"no ideal above m^{k} has colength >= {min_colength} (maximum is {full})",
            c=format_rational(c), k=k,
        )
    factor = math.factorial(n)
    best = None
    if mode == "exact":
        for ideal in monomials.enumerate_staircases(n, k, min_colength=max(1, min_colength), budgets=budgets):
            value = factor * lct(model, ideal).value ** n * ideal.colength()
            if best is None or value < best[0]:
                best = (value, ideal)
            elif value == best[0] and _staircase_key(ideal) < _staircase_key(best[1]):
                best = (value, ideal)
    elif mode == "upper":
        seen = set()
        for weights in _weight_grid(n, weight_ratios):
            ideal = monomials.valuation_ideal(weights, k)
            if ideal in seen:
                continue
            seen.add(ideal)
            if ideal.colength() < min_colength:
                continue
            value = factor * lct(model, ideal).value ** n * ideal.colength()
            if best is None or value < best[0]:
                best = (value, ideal)
            elif value == best[0] and _staircase_key(ideal) < _staircase_key(best[1]):
                best = (value, ideal)
        if best is None:
            raise ValidationError(
                "infeasible-c",
                "no valuation ideal on the weight grid meets the colength constraint",
            )
    else:
        raise ValidationError("invalid-mode", f"unknown mode {mode!r}")
    return best[0], best[1]


def _weight_grid(n, ratios):
    """Rational weight vectors with minimum entry one."""
    import itertools as _it

    for combo in _it.product(ratios, repeat=n):
        if min(combo) == 1:
            yield combo


@dataclass(frozen=True)
class ColengthScanResult:
    c: Fraction
    mode: str
    rows: tuple  # (k, value, argmin ideal)
    liminf_estimate: Fraction
    reference_hvol: Fraction
    approaches_from_above: bool
    warnings: tuple = (EQUIVARIANT_WARNING,)

    def to_payload(self):
        return {
            "c": format_rational(self.c),
            "mode": self.mode,
            "rows": [
                {
                    "k": k,
                    "value": format_rational(value),
                    "argmin_gens": [list(g) for g in ideal.gens],
                }
                for k, value, ideal in self.rows
            ],
            "liminf_estimate": format_rational(self.liminf_estimate),
            "reference_hvol": format_rational(self.reference_hvol),
            "approaches_from_above": self.approaches_from_above,
        }

    def csv_rows(self):
        out = [("k", "value_num", "value_den", "argmin_gens", "mode")]
        for k, value, ideal in self.rows:
            gens = ";".join(",".join(str(x) for x in g) for g in ideal.gens)
            out.append((k, value.numerator, value.denominator, gens, self.mode))
        return out


def colength_convergence_scan(model, c, k_range, mode="exact", budgets=None):
    """Normalized colengths along increasing k, with a liminf estimate.

    The estimate is the minimum over the tail half of the scanned range.
    Every row is checked exactly against the closed-form normalized
    volume from below; a row falling under it would contradict the
    regular-point colength-multiplicity comparison and is reported as an
    internal invariant violation.
    """
    ks = list(k_range)
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValidationError("invalid-range", "k_range must be nonempty and strictly increasing")
    c = parse_rational(c)
    reference = hvol_closed_form(model).value
    rows = []
    for k in ks:
        value, ideal = normalized_colength(model, c, k, mode=mode, budgets=budgets)
        if value < reference:
            raise InvariantViolationError(
                "colength-below-volume",
                f"normalized colength {value} at k={k} fell below the normalized volume {reference}",
            )
        rows.append((k, value, ideal))
    tail = rows[len(rows) // 2 :]
    liminf_estimate = min(value for _, value, _ in tail)
    return ColengthScanResult(
        c=c,
        mode=mode,
        rows=tuple(rows),
        liminf_estimate=liminf_estimate,
        reference_hvol=reference,
        approaches_from_above=all(value >= reference for _, value, _ in rows),
    )


# ---------------------------------------------------------------------------
# probes


@dataclass(frozen=True)
class LechGapReport:
    n: int
    k: int
    delta: Fraction
    epsilon: Fraction
    min_ratio: Fraction
    witness: monomials.MonomialIdeal
    ideals_scanned: int

    @property
    def holds_exactly(self):
        return self.min_ratio >= 1

    @property
    def holds_with_epsilon(self):
        return self.min_ratio >= 1 - self.epsilon

    def to_payload(self):
        return {
            "n": self.n,
            "k": self.k,
            "delta": format_rational(self.delta),
            "epsilon": format_rational(self.epsilon),
            "min_ratio": format_rational(self.min_ratio),
            "witness_gens": [list(g) for g in self.witness.gens],
            "ideals_scanned": self.ideals_scanned,
            "holds_exactly": self.holds_exactly,
        }


def lech_gap_probe(n, k, delta, epsilon, budgets=None):
    """Minimum of n! colength / multiplicity over ideals squeezed between
    the k-th and ceil(delta k)-th powers of the maximal ideal.

    On affine space the comparison is exact (the ratio never drops below
    one); that is asserted, so a smaller ratio surfaces as an internal
    invariant violation rather than a report entry.
    """
    delta = parse_rational(delta)
    epsilon = parse_rational(epsilon)
    if not 0 < delta < 1 or not 0 < epsilon < 1:
        raise ValidationError("invalid-range", "delta and epsilon must lie in (0, 1)")
    j = math.ceil(delta * k)
    factor = math.factorial(n)
    best = None
    count = 0
    for ideal in monomials.enumerate_staircases(n, k, contain_power=j, budgets=budgets):
        count += 1
        ratio = Fraction(factor * ideal.colength()) / ideal.multiplicity()
        if best is None or ratio < best[0]:
            best = (ratio, ideal)
        elif ratio == best[0] and _staircase_key(ideal) < _staircase_key(best[1]):
            best = (ratio, ideal)
    if best is None:
        raise ValidationError("invalid-range", f"no ideals between m^{k} and m^{j}")
    if best[0] < 1:
        raise InvariantViolationError(
            "lech-violated",
            f"colength-multiplicity ratio {best[0]} below one on a regular point",
            witness=[list(g) for g in best[1].gens],
        )
    return LechGapReport(
        n=n, k=k, delta=delta, epsilon=epsilon,
        min_ratio=best[0], witness=best[1], ideals_scanned=count,
    )


@dataclass(frozen=True)
class KssVerdict:
    verdict: str  # K-SEMISTABLE | UNSTABLE
    hvol_result: NormalizedVolumeResult
    bound: Fraction
    margin: object  # bound - hvol, Fraction or float
    oracle: bool | None
    tolerance: float

    def to_payload(self):
        return {
            "verdict": self.verdict,
            "hvol": self.hvol_result.to_payload(),
            "bound": format_rational(self.bound),
            "margin": format_rational(self.margin) if isinstance(self.margin, Fraction) else float(self.margin),
            "oracle": self.oracle,
            "tolerance": self.tolerance,
        }


def kss_via_cone(fano, tolerance=1e-6, check_oracle=True, **hvol_options):
    """K-semistability of a polarized toric base through its cone.

    Compares the normalized volume of the cone vertex against the
    degree bound: equality within tolerance means K-SEMISTABLE, a
    deficit beyond tolerance means UNSTABLE, and an excess beyond
    tolerance is impossible, so it is raised as an invariant violation.
    With ``check_oracle`` (boundary-free inputs only) the barycenter
    criterion is evaluated independently and any disagreement with the
    verdict is a hard error.
    """
    model = cone_construction(fano)
    result = hvol_toric(model, tolerance=min(tolerance, 1e-9), **hvol_options)
    bound = fano_degree_bound(fano)
    if result.exact:
        margin = bound - result.value
        over = margin < -tolerance * bound
        semistable = result.value == bound or abs(margin) <= tolerance * bound
    else:
        margin = float(bound) - result.value
        over = margin < -tolerance * float(bound)
        semistable = abs(margin) <= tolerance * float(bound)
    if over:
        raise InvariantViolationError(
            "kss-bound-violated",
            f"normalized volume {result.value} exceeds the degree bound {bound}",
        )
    verdict = "K-SEMISTABLE" if semistable else "UNSTABLE"
    oracle = None
    if check_oracle:
        oracle = toric_kss_oracle(anticanonical_polytope(fano))
        if oracle != semistable:
            raise InvariantViolationError(
                "oracle-disagreement",
                f"barycenter criterion says {oracle}, volume comparison says {semistable}",
                bound=format_rational(bound),
            )
    return KssVerdict(
        verdict=verdict,
        hvol_result=result,
        bound=bound,
        margin=margin,
        oracle=oracle,
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class QBoundReport:
    q: int
    n: int
    value: Fraction  # q (n-1)! vol(Q)
    limit: Fraction  # n^n
    oracle: bool
    asserted: bool

    @property
    def holds(self):
        return self.value <= self.limit

    def to_payload(self):
        return {
            "q": self.q,
            "n": self.n,
            "value": format_rational(self.value),
            "limit": format_rational(self.limit),
            "oracle": self.oracle,
            "asserted": self.asserted,
            "holds": self.holds,
        }


def q_bound_check(fano, q):
    """Check q times the anticanonical degree against n^n.

    The input polytope is the anticanonical moment polytope of the base;
    q is its supplied divisibility. The inequality is asserted only when
    the barycenter oracle certifies K-semistability; otherwise the
    numbers are reported without an assertion.
    """
    if q < 1:
        raise ValidationError("invalid-index", "q must be a positive integer")
    n = fano.base_dim + 1
    value = q * math.factorial(n - 1) * fano.polytope.volume()
    limit = Fraction(n) ** n
    oracle = toric_kss_oracle(fano.polytope)
    if oracle and value > limit:
        raise InvariantViolationError(
            "q-bound-violated",
            f"q (-K)^(n-1) = {value} exceeds n^n = {limit} on a K-semistable base",
        )
    return QBoundReport(q=q, n=n, value=value, limit=limit, oracle=oracle, asserted=oracle)


@dataclass(frozen=True)
class WitnessReport:
    weights: tuple
    log_discrepancy: Fraction
    volume: Fraction
    value: Fraction
    closed_form: Fraction

    def to_payload(self):
        return {
            "weights": [format_rational(w) for w in self.weights],
            "log_discrepancy": format_rational(self.log_discrepancy),
            "volume": format_rational(self.volume),
            "value": format_rational(self.value),
            "closed_form": format_rational(self.closed_form),
        }


def maxhvol_witness_check(model):
    """Evaluate the explicit witness valuation on a single-hyperplane pair.

    For boundary coefficient a on one hyperplane, the weights
    (1/(1-a), 1, ..., 1) give log discrepancy n and volume 1 - a; the
    product (1-a) n^n must meet the closed form exactly.
    """
    if not isinstance(model, MonomialPair):
        raise ValidationError("invalid-model", "witness check applies to monomial pairs")
    nonzero = [i for i, a in enumerate(model.coeffs) if a != 0]
    if len(nonzero) > 1:
        raise ValidationError("invalid-coefficient", "witness check needs at most one nonzero coefficient")
    idx = nonzero[0] if nonzero else 0
    a = model.coeffs[idx]
    weights = tuple(1 / (1 - a) if i == idx else Fraction(1) for i in range(model.n))
    valuation = WeightValuation(weights)
    disc = log_discrepancy(model, valuation)
    vol = valuation_volume(model, valuation)
    value = disc**model.n * vol
    expected = (1 - a) * Fraction(model.n) ** model.n
    closed = hvol_closed_form(model).value
    if disc != model.n or vol != 1 - a or value != expected or closed != value:
        raise InvariantViolationError(
            "witness-mismatch",
            f"witness valuation gave A={disc}, vol={vol}, product {value}; expected {expected}",
        )
    return WitnessReport(
        weights=weights,
        log_discrepancy=disc,
        volume=vol,
        value=value,
        closed_form=closed,
    )
