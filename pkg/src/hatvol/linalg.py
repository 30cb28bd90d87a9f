"""Small dense exact linear algebra over Fraction.

Row counts here never exceed a handful, so plain Gaussian elimination
is used throughout. Integer vectors are normalized to primitive form
(gcd one, direction preserved).
"""

import math
from fractions import Fraction


def primitive(vec):
    """Scale an integer vector by 1/gcd, keeping its direction."""
    g = 0
    for x in vec:
        g = math.gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in vec)


def clear_denominators(vec):
    """Scale a rational vector by the positive lcm of denominators to integers."""
    lcm = 1
    fracs = [Fraction(x) for x in vec]
    for x in fracs:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in fracs)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _eliminate(rows):
    """Row-reduce a list of Fraction rows in place; returns pivot column list."""
    rows = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows):
    if not rows:
        return 0
    _, pivots = _eliminate(rows)
    return len(pivots)


def det(matrix):
    """Exact determinant of a square Fraction matrix."""
    n = len(matrix)
    m = [list(map(Fraction, row)) for row in matrix]
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def solve_affine(rows, rhs, dim):
    """Solve a (possibly overdetermined) linear system exactly.

    Returns the unique solution as a Fraction tuple, or None when the
    system is inconsistent or underdetermined.
    """
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    reduced, pivots = _eliminate(aug)
    if dim in pivots:
        return None  # pivot in the rhs column: inconsistent
    if len(pivots) < dim:
        return None  # underdetermined
    x = [Fraction(0)] * dim
    for r, c in enumerate(pivots):
        x[c] = reduced[r][dim]
    return tuple(x)


def nullspace(rows, dim):
    """Basis of the right nullspace of the given rows, as Fraction tuples."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    reduced, pivots = _eliminate([list(r) for r in rows])
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(tuple(v))
    return basis
