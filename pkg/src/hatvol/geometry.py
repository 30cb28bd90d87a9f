"""Exact rational polyhedral geometry in ambient dimension up to four.

Convex bodies are stored by their vertices; the facet system is derived
on demand by enumerating supporting hyperplanes over all small vertex
subsets, which is entirely adequate at desk scale. Every computation
here (hulls, duals, volumes, slices, lattice counts, the counting and
Riemann-sum probes) runs over `fractions.Fraction`; no floating point
enters this module.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InvariantViolationError, ValidationError

MAX_DIM = 4


def _as_point(p):
    return tuple(Fraction(x) for x in p)


def _centroid(points):
    n = len(points)
    return tuple(sum(c) / n for c in zip(*points))


# ---------------------------------------------------------------------------
# convex bodies


class ConvexBody:
    """A bounded convex polytope with exact rational vertices.

    Instances are produced by :func:`convex_hull` and are immutable.
    ``facets`` is the irredundant system of inequalities <a, x> <= b with
    primitive integer normals; for a body of lower affine dimension the
    system is complemented by ``equations`` cutting out the affine hull.
    """

    __slots__ = ("dim", "vertices", "_facets", "_equations", "_affine_dim")

    def __init__(self, dim, vertices, facets, equations, affine_dim):
        self.dim = dim
        self.vertices = vertices
        self._facets = facets
        self._equations = equations
        self._affine_dim = affine_dim

    @property
    def affine_dim(self):
        return self._affine_dim

    @property
    def is_full_dimensional(self):
        return self._affine_dim == self.dim

    @property
    def facets(self):
        return self._facets

    @property
    def equations(self):
        return self._equations

    def __eq__(self, other):
        return (
            isinstance(other, ConvexBody)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"ConvexBody(dim={self.dim}, vertices={len(self.vertices)}, affine_dim={self._affine_dim})"

    def contains(self, point, strict=False):
        """Exact membership test; ``strict`` tests the interior."""
        p = _as_point(point)
        if len(p) != self.dim:
            raise ValidationError("dimension-mismatch", "point dimension differs from body dimension")
        for normal, rhs in self._equations:
            if linalg.dot(normal, p) != rhs:
                return False
        if strict and self._equations:
            return False
        for normal, rhs in self._facets:
            value = linalg.dot(normal, p)
            if value > rhs or (strict and value == rhs):
                return False
        return True

    def coordinate_range(self, axis):
        """Exact [min, max] of the given coordinate over the body."""
        values = [v[axis] for v in self.vertices]
        return min(values), max(values)

    def volume(self):
        return volume(self)

    def barycenter(self):
        """Exact barycenter (uniform mass), via the same triangulation as volume."""
        if not self.is_full_dimensional:
            raise ValidationError("degenerate-body", "barycenter implemented for full-dimensional bodies")
        total = Fraction(0)
        weighted = [Fraction(0)] * self.dim
        for simplex in _full_triangulation(self):
            mat = [[p[i] - simplex[0][i] for i in range(self.dim)] for p in simplex[1:]]
            vol = abs(linalg.det(mat))
            c = _centroid(simplex)
            total += vol
            for i in range(self.dim):
                weighted[i] += vol * c[i]
        return tuple(w / total for w in weighted)

    def slice(self, axis, t):
        return slice_body(self, axis, t)

    def lattice_points(self, k):
        return lattice_points(self, k)


def convex_hull(points):
    """Convex hull of exact rational points as a :class:`ConvexBody`.

    The vertex set is minimal. Lower-dimensional inputs are supported:
    the body is flagged not full-dimensional, and its facet system is
    expressed inside the affine hull together with explicit equations.
    """
    if not points:
        raise ValidationError("empty-input", "convex hull of an empty point set")
    pts = sorted(set(_as_point(p) for p in points))
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValidationError("dimension-mismatch", "points of mixed dimension")
    if dim > MAX_DIM:
        raise ValidationError("unsupported-dimension", f"dimension {dim} exceeds supported maximum {MAX_DIM}")
    if dim < 1:
        raise ValidationError("unsupported-dimension", "dimension must be at least 1")

    base = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]
    affine_dim = linalg.rank(diffs) if diffs else 0

    if affine_dim == dim:
        facets = _supporting_facets(pts, dim)
        vertices = _extract_vertices(pts, facets, dim)
        return ConvexBody(dim, tuple(sorted(vertices)), tuple(facets), (), dim)

    # degenerate: hull inside the affine subspace through base
    if affine_dim == 0:
        equations = _affine_equations(pts, base, [], dim)
        return ConvexBody(dim, (base,), (), tuple(equations), 0)
    basis = _independent_subset(diffs, affine_dim)
    coords = _affine_coordinates(pts, base, basis)
    sub = convex_hull(coords)
    index = {coords[i]: pts[i] for i in range(len(pts))}
    vertices = tuple(sorted(index[v] for v in sub.vertices))
    equations = _affine_equations(pts, base, basis, dim)
    facets = _pull_back_facets(sub.facets, base, basis, dim)
    return ConvexBody(dim, vertices, tuple(facets), tuple(equations), affine_dim)


def _independent_subset(diffs, target):
    chosen = []
    for d in diffs:
        if linalg.rank(chosen + [d]) > len(chosen):
            chosen.append(d)
            if len(chosen) == target:
                break
    return chosen


def _affine_coordinates(pts, base, basis):
    """Coordinates of each point in the affine frame (base; basis)."""
    rows = [[basis[j][i] for j in range(len(basis))] for i in range(len(base))]
    out = []
    for p in pts:
        rhs = [p[i] - base[i] for i in range(len(base))]
        y = linalg.solve_affine(rows, rhs, len(basis))
        if y is None:
            raise InvariantViolationError("affine-frame", "point outside its own affine hull")
        out.append(y)
    return out


def _affine_equations(pts, base, basis, dim):
    normals = linalg.nullspace(basis, dim)
    equations = []
    for n in normals:
        normal = linalg.primitive(linalg.clear_denominators(n))
        equations.append((normal, linalg.dot(normal, base)))
    return sorted(equations)


def _pull_back_facets(sub_facets, base, basis, dim):
    """Express facets of the reduced hull as ambient inequalities.

    Uses a coordinate subset on which the basis matrix is invertible, so
    the affine coordinates are exact linear functions of the ambient ones.
    """
    if not sub_facets:
        return []
    r = len(basis)
    rows = [[basis[j][i] for j in range(r)] for i in range(dim)]
    positions = []
    block = []
    for i in range(dim):
        if linalg.rank(block + [rows[i]]) > len(block):
            block.append(rows[i])
            positions.append(i)
            if len(block) == r:
                break
    inverse_cols = []
    for col in range(r):
        e = [Fraction(int(i == col)) for i in range(r)]
        inverse_cols.append(linalg.solve_affine(block, e, r))
    facets = []
    for normal, rhs in sub_facets:
        # <normal, y> <= rhs with y = B_I^{-1} (x_I - base_I)
        coeff = [
            sum(Fraction(normal[j]) * inverse_cols[i][j] for j in range(r))
            for i in range(r)
        ]
        ambient = [Fraction(0)] * dim
        for c, pos in zip(coeff, positions):
            ambient[pos] = c
        shift = sum(c * base[pos] for c, pos in zip(coeff, positions))
        scaled = linalg.clear_denominators(list(ambient) + [Fraction(rhs) + shift])
        g = 0
        for x in scaled[:-1]:
            g = math.gcd(g, abs(x))
        facets.append((tuple(x // g for x in scaled[:-1]), Fraction(scaled[-1], g)))
    return sorted(facets)


def _supporting_facets(pts, dim):
    """All supporting hyperplanes spanned by dim points of a full-dim set."""
    facets = set()
    for subset in itertools.combinations(range(len(pts)), dim):
        diffs = [
            tuple(pts[i][c] - pts[subset[0]][c] for c in range(dim))
            for i in subset[1:]
        ]
        kernel = linalg.nullspace(diffs, dim)
        if len(kernel) != 1:
            continue
        normal = linalg.primitive(linalg.clear_denominators(kernel[0]))
        rhs = linalg.dot(normal, pts[subset[0]])
        below = above = False
        for p in pts:
            value = linalg.dot(normal, p)
            if value < rhs:
                below = True
            elif value > rhs:
                above = True
            if below and above:
                break
        if below and above:
            continue
        if above:
            normal = tuple(-x for x in normal)
            rhs = -rhs
        facets.add((normal, rhs))
    return sorted(facets)


def _extract_vertices(pts, facets, dim):
    vertices = []
    for p in pts:
        active = [f[0] for f in facets if linalg.dot(f[0], p) == f[1]]
        if len(active) >= dim and linalg.rank(active) == dim:
            vertices.append(p)
    return vertices


# ---------------------------------------------------------------------------
# triangulation and volume


def _triangulate_indices(points, d):
    """Triangulate the hull of ``points`` (affine dimension d) into index tuples.

    Every simplex uses only input points: the hull is fanned from its
    lexicographically least vertex over triangulations of the opposite
    facets.
    """
    if d == 0:
        return [(0,)]
    if d == 1:
        direction = None
        for p in points[1:]:
            diff = tuple(x - y for x, y in zip(p, points[0]))
            if any(x != 0 for x in diff):
                direction = diff
                break
        keyed = sorted(range(len(points)), key=lambda i: linalg.dot(direction, points[i]))
        return [(keyed[0], keyed[-1])]
    base = points[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in points[1:]]
    basis = _independent_subset(diffs, d)
    coords = _affine_coordinates(points, base, basis)
    facets = _supporting_facets(sorted(set(coords)), d)
    vertex_idx = [
        i
        for i in range(len(points))
        if linalg.rank([f[0] for f in facets if linalg.dot(f[0], coords[i]) == f[1]]) == d
    ]
    apex = min(vertex_idx, key=lambda i: coords[i])
    simplices = []
    for normal, rhs in facets:
        if linalg.dot(normal, coords[apex]) == rhs:
            continue
        face_idx = [i for i in vertex_idx if linalg.dot(normal, coords[i]) == rhs]
        face_pts = [coords[i] for i in face_idx]
        for sub in _triangulate_indices(face_pts, d - 1):
            simplices.append((apex,) + tuple(face_idx[j] for j in sub))
    return simplices


def _full_triangulation(body):
    """Triangulate a full-dimensional body from its interior centroid."""
    center = _centroid(body.vertices)
    simplices = []
    for normal, rhs in body.facets:
        face = [v for v in body.vertices if linalg.dot(normal, v) == rhs]
        for idx in _triangulate_indices(face, body.dim - 1):
            simplices.append((center,) + tuple(face[i] for i in idx))
    return simplices


def volume(body):
    """Exact Euclidean volume; zero (degenerate) for lower-dimensional bodies."""
    if not body.is_full_dimensional:
        return Fraction(0)
    total = Fraction(0)
    for simplex in _full_triangulation(body):
        mat = [[p[i] - simplex[0][i] for i in range(body.dim)] for p in simplex[1:]]
        total += abs(linalg.det(mat))
    return total / math.factorial(body.dim)


# ---------------------------------------------------------------------------
# slicing


def vertices_from_h(inequalities, equations, dim):
    """Vertex enumeration of {x : <a,x> <= b, <c,x> = d} by basis search."""
    eq_rows = [list(map(Fraction, n)) for n, _ in equations]
    eq_rhs = [Fraction(b) for _, b in equations]
    r = linalg.rank(eq_rows) if eq_rows else 0
    found = set()
    for subset in itertools.combinations(range(len(inequalities)), dim - r):
        rows = eq_rows + [list(map(Fraction, inequalities[i][0])) for i in subset]
        rhs = eq_rhs + [Fraction(inequalities[i][1]) for i in subset]
        x = linalg.solve_affine(rows, rhs, dim)
        if x is None:
            continue
        if all(linalg.dot(n, x) <= b for n, b in inequalities):
            found.add(x)
    return sorted(found)


def slice_body(body, axis, t):
    """Intersection with {x_axis = t}, embedded in dimension dim - 1."""
    t = Fraction(t)
    if not 0 <= axis < body.dim:
        raise ValidationError("invalid-axis", f"axis {axis} out of range for dimension {body.dim}")
    lo, hi = body.coordinate_range(axis)
    if t < lo or t > hi:
        raise ValidationError("empty-slice", f"slice level {t} outside projection interval [{lo}, {hi}]")
    if body.dim == 1:
        raise ValidationError("unsupported-dimension", "cannot slice a one-dimensional body")
    normal = tuple(int(i == axis) for i in range(body.dim))
    cut = list(body.equations) + [(normal, t)]
    points = vertices_from_h(list(body.facets), cut, body.dim)
    if not points:
        raise InvariantViolationError("empty-slice-interior", "slice within projection interval produced no points")
    dropped = [p[:axis] + p[axis + 1 :] for p in points]
    return convex_hull(dropped)


# ---------------------------------------------------------------------------
# lattice point counting


def _int_ceil(num, den):
    return -((-num) // den)


def lattice_points(body, k):
    """Exact count of integer points in the dilate k * body.

    Iterates the integer bounding box of the first dim - 1 coordinates
    and resolves the last coordinate as an exact interval read off the
    facet system, after clearing all denominators.
    """
    if k < 1:
        raise ValidationError("invalid-dilation", "dilation factor must be a positive integer")
    dim = body.dim
    # integral forms: den * <a, u> (<=/==) k * num
    ineqs = []
    for normal, rhs in body.facets:
        ineqs.append((tuple(rhs.denominator * a for a in normal), k * rhs.numerator))
    eqs = []
    for normal, rhs in body.equations:
        r = Fraction(rhs)
        eqs.append((tuple(r.denominator * a for a in normal), k * r.numerator))
    bounds = []
    for axis in range(dim):
        lo, hi = body.coordinate_range(axis)
        bounds.append((math.ceil(k * lo), math.floor(k * hi)))
    prefix_ranges = [range(lo, hi + 1) for lo, hi in bounds[:-1]]
    lo_last, hi_last = bounds[-1]
    count = 0
    for prefix in itertools.product(*prefix_ranges):
        lo, hi = lo_last, hi_last
        ok = True
        for a, b in ineqs:
            partial = sum(a[i] * prefix[i] for i in range(dim - 1))
            c = a[-1]
            if c > 0:
                hi = min(hi, (b - partial) // c)
            elif c < 0:
                lo = max(lo, _int_ceil(b - partial, c))
            elif partial > b:
                ok = False
                break
        if ok:
            for a, b in eqs:
                partial = sum(a[i] * prefix[i] for i in range(dim - 1))
                c = a[-1]
                if c == 0:
                    if partial != b:
                        ok = False
                        break
                else:
                    rem = b - partial
                    if rem % c != 0:
                        ok = False
                        break
                    z = rem // c
                    lo = max(lo, z)
                    hi = min(hi, z)
        if ok and hi >= lo:
            count += hi - lo + 1
    return count


@dataclass(frozen=True)
class CountingProbeResult:
    """Per-dilation lattice counting errors and the empirical threshold."""

    rows: tuple  # (k, exact absolute error)
    epsilon: Fraction
    k0: int | None  # least k in range from which all later errors are <= epsilon

    def error_at(self, k):
        for kk, err in self.rows:
            if kk == k:
                return err
        raise KeyError(k)


def counting_error_probe(body, k_range, epsilon=Fraction(1, 20)):
    """Tabulate |#(k*body ∩ Z^n)/k^n - vol(body)| over a dilation range.

    Reports every per-k error without smoothing, plus the least k in the
    range after which every error stays within epsilon (None if never).
    """
    ks = list(k_range)
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValidationError("invalid-range", "k_range must be nonempty and strictly increasing")
    epsilon = Fraction(epsilon)
    vol = volume(body)
    n = body.dim
    rows = []
    for k in ks:
        err = abs(Fraction(lattice_points(body, k), k**n) - vol)
        rows.append((k, err))
    k0 = None
    for i in range(len(rows) - 1, -1, -1):
        if rows[i][1] <= epsilon:
            k0 = rows[i][0]
        else:
            break
    return CountingProbeResult(rows=tuple(rows), epsilon=epsilon, k0=k0)


# ---------------------------------------------------------------------------
# monotone Riemann sums


@dataclass(frozen=True)
class RiemannGapResult:
    gap: Fraction
    bound: Fraction

    @property
    def holds(self):
        return self.gap <= self.bound


def monotone_riemann_gap(samples, a, b, k, integral):
    """Gap between an exact integral and the (1/k)-grid Riemann sum.

    ``samples`` maps each grid point of [a, b] ∩ (1/k)Z to a value in
    [0, 1]; the values must be monotone along the grid. The caller
    supplies the exact integral of the sampled function.
    """
    a, b, integral = Fraction(a), Fraction(b), Fraction(integral)
    if k < 1:
        raise ValidationError("invalid-range", "k must be a positive integer")
    grid = [Fraction(j, k) for j in range(math.ceil(a * k), math.floor(b * k) + 1)]
    values = []
    for t in grid:
        if t not in samples:
            raise ValidationError("missing-sample", f"no sample at grid point {t}")
        g = Fraction(samples[t])
        if g < 0 or g > 1:
            raise ValidationError("invalid-sample", f"sample {g} at {t} outside [0, 1]")
        values.append(g)
    increasing = all(x <= y for x, y in zip(values, values[1:]))
    decreasing = all(x >= y for x, y in zip(values, values[1:]))
    if not (increasing or decreasing):
        raise ValidationError("monotonicity-violation", "samples are not monotone along the grid")
    riemann = sum(values, Fraction(0)) / k
    return RiemannGapResult(gap=abs(integral - riemann), bound=Fraction(2, k))


# ---------------------------------------------------------------------------
# Brunn-Minkowski concavity probe


def _power_mean_concave(v_mid, v1, v2, m):
    """Decide v_mid^(1/m) >= (v1^(1/m) + v2^(1/m)) / 2 exactly, m in {1, 2, 3}.

    Radicals are cleared by power comparison: for m = 3 the right-hand
    sum S = A^(1/3) + B^(1/3) is the unique nonnegative root of
    s^3 - 3 (AB)^(1/3) s - (A + B), and (AB)^(1/3) is rational here.
    """
    if m == 1:
        return 2 * v_mid >= v1 + v2
    if m == 2:
        lhs = 4 * v_mid - v1 - v2
        return lhs >= 0 and lhs * lhs >= 4 * v1 * v2
    if m == 3:
        lhs = 8 * v_mid - v1 - v2
        if lhs < 0:
            return False
        s = lhs / 3
        q = v1 * v2
        r = v1 * v1 * v2 + v1 * v2 * v2
        return s**3 - 3 * q * s - r >= 0
    raise ValidationError("unsupported-dimension", f"no radical-free comparison for exponent 1/{m}")


def brunn_minkowski_probe(body, axis, grid=9):
    """Check midpoint concavity of t -> vol(slice at t)^(1/(dim-1)) on a grid.

    ``grid`` is either an integer (that many equally spaced levels across
    the projection interval, endpoints included) or an explicit list of
    levels. Every pair of grid levels whose midpoint is also on the grid
    is checked with exact arithmetic.
    """
    if not body.is_full_dimensional:
        raise ValidationError("degenerate-body", "probe requires a full-dimensional body")
    lo, hi = body.coordinate_range(axis)
    if isinstance(grid, int):
        if grid < 3:
            raise ValidationError("invalid-range", "grid needs at least three levels")
        levels = [lo + (hi - lo) * Fraction(j, grid - 1) for j in range(grid)]
    else:
        levels = sorted(Fraction(t) for t in grid)
    vols = {t: volume(slice_body(body, axis, t)) for t in levels}
    position = {t: i for i, t in enumerate(levels)}
    m = body.dim - 1
    for i, t1 in enumerate(levels):
        for t2 in levels[i + 2 :]:
            mid = (t1 + t2) / 2
            if mid not in position:
                continue
            if not _power_mean_concave(vols[mid], vols[t1], vols[t2], m):
                return False
    return True


# ---------------------------------------------------------------------------
# cones


class Cone:
    """A rational polyhedral cone given by primitive generator rays.

    On construction the rays are normalized to primitive vectors and,
    for pointed full-dimensional cones, reduced to the extreme ones so
    that representations are unique.
    """

    __slots__ = ("dim", "rays", "_dual_rays", "_pointed", "_full")

    def __init__(self, rays):
        rays = list(rays)
        if not rays:
            raise ValidationError("empty-input", "a cone needs at least one ray")
        dim = len(rays[0])
        if any(len(r) != dim for r in rays):
            raise ValidationError("dimension-mismatch", "rays of mixed dimension")
        prim = []
        for r in rays:
            r = tuple(int(x) for x in r)
            if all(x == 0 for x in r):
                raise ValidationError("invalid-cone", "zero vector is not a ray")
            prim.append(linalg.primitive(r))
        prim = sorted(set(prim))
        self.dim = dim
        self._full = linalg.rank(prim) == dim
        self._dual_rays = None
        self._pointed = None
        if self._full:
            dual = _extreme_rays(prim, dim)
            self._dual_rays = dual
            interior = tuple(sum(col) for col in zip(*dual)) if dual else None
            self._pointed = bool(dual) and all(linalg.dot(interior, r) > 0 for r in prim)
            if self._pointed:
                prim = [
                    r
                    for r in prim
                    if linalg.rank([d for d in dual if linalg.dot(d, r) == 0]) == dim - 1
                ]
        self.rays = tuple(sorted(prim))

    @property
    def is_full_dimensional(self):
        return self._full

    @property
    def is_pointed(self):
        if self._pointed is not None:
            return self._pointed
        # lower-dimensional cone: decide inside its linear span
        basis = _independent_subset(list(self.rays), linalg.rank(list(self.rays)))
        coords = _affine_coordinates(list(self.rays), tuple(Fraction(0) for _ in range(self.dim)), basis)
        restricted = Cone([linalg.clear_denominators(c) for c in coords])
        return restricted.is_pointed

    def dual(self):
        """The dual cone {u : <u, v> >= 0 for all rays v}; an involution."""
        if not (self._full and self._pointed):
            raise ValidationError("invalid-cone", "dual cone requires a pointed full-dimensional cone")
        return Cone(self._dual_rays)

    def facet_normals(self):
        """Primitive inner normals of the facets (= rays of the dual)."""
        if not self._full:
            raise ValidationError("invalid-cone", "facet normals require a full-dimensional cone")
        return self._dual_rays

    def contains(self, point, strict=False):
        p = _as_point(point)
        if not self._full:
            raise ValidationError("invalid-cone", "membership test requires a full-dimensional cone")
        for normal in self._dual_rays:
            value = linalg.dot(normal, p)
            if value < 0 or (strict and value == 0):
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, Cone) and self.rays == other.rays

    def __hash__(self):
        return hash(self.rays)

    def __repr__(self):
        return f"Cone(rays={list(self.rays)})"


def _extreme_rays(normals, dim):
    """Extreme rays of {y : <n, y> >= 0 for all n}, assuming full row rank."""
    if dim == 1:
        out = []
        for cand in ((1,), (-1,)):
            if all(linalg.dot(n, cand) >= 0 for n in normals):
                out.append(cand)
        return sorted(out)
    found = set()
    for subset in itertools.combinations(normals, dim - 1):
        kernel = linalg.nullspace(list(subset), dim)
        if len(kernel) != 1:
            continue
        ray = linalg.primitive(linalg.clear_denominators(kernel[0]))
        for cand in (ray, tuple(-x for x in ray)):
            if all(linalg.dot(n, cand) >= 0 for n in normals):
                found.add(cand)
    return sorted(found)


def dual_cone(cone):
    return cone.dual()


# ---------------------------------------------------------------------------
# polyhedra with recession rays


class Polyhedron:
    """An unbounded polyhedron given by generating points plus recession rays.

    The facet system is derived once by passing to the homogenization
    cone in one dimension higher and dualizing; the V-form and the
    derived H-form therefore describe the same set exactly.
    """

    __slots__ = ("dim", "points", "rays", "_facets")

    def __init__(self, points, rays):
        pts = sorted(set(_as_point(p) for p in points))
        if not pts:
            raise ValidationError("empty-input", "a polyhedron needs at least one point")
        self.dim = len(pts[0])
        self.points = tuple(pts)
        self.rays = tuple(sorted(set(linalg.primitive(tuple(int(x) for x in r)) for r in rays)))
        self._facets = None

    @property
    def facets(self):
        """Irredundant inequalities <a, x> >= c with primitive integer a."""
        if self._facets is None:
            gens = []
            for p in self.points:
                scaled = linalg.clear_denominators(tuple(p) + (Fraction(1),))
                gens.append(scaled)
            for r in self.rays:
                gens.append(tuple(r) + (0,))
            rays = _extreme_rays(gens, self.dim + 1)
            facets = []
            for w in rays:
                if all(x == 0 for x in w[:-1]):
                    continue  # the trivial inequality 1 >= 0
                facets.append((w[:-1], Fraction(-w[-1])))
            self._facets = tuple(sorted(facets))
        return self._facets

    def contains(self, point):
        p = _as_point(point)
        return all(linalg.dot(n, p) >= c for n, c in self.facets)

    def vertices(self):
        """Generating points that are genuine vertices of the polyhedron."""
        out = []
        for p in self.points:
            active = [n for n, c in self.facets if linalg.dot(n, p) == c]
            if active and linalg.rank(active) == self.dim:
                out.append(p)
        return tuple(sorted(out))

    def __repr__(self):
        return f"Polyhedron(dim={self.dim}, points={len(self.points)}, rays={len(self.rays)})"
