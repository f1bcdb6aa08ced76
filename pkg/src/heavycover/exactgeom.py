"""Exact rational points, hyperplanes, and the predicates everything else uses.

Every coordinate is a ``fractions.Fraction`` and every operation is exact; the
library never rounds. Hot paths clear denominators once and work on integer
homogeneous coordinates, so determinant signs reduce to big-int arithmetic.
"""

from __future__ import annotations

import itertools
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import DegeneracyError, DimensionError, DomainError

Scalar = Fraction


def scalar(value) -> Fraction:
    """Coerce an int, Fraction, or exact string ("p/q" or finite decimal).

    Floats and scientific notation are rejected: they cannot be trusted to
    represent the intended exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if "e" in value or "E" in value:
            raise DomainError(f"scientific notation is not accepted: {value!r}")
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational literal: {value!r}") from exc
    raise DomainError(f"not an exact scalar: {value!r} (floats are rejected)")


class Point:
    """Immutable point with Fraction coordinates in R^d, d >= 1."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if not coords:
            raise DimensionError("a point needs at least one coordinate")
        object.__setattr__(self, "coords", tuple(scalar(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def x(self) -> Fraction:
        return self.coords[0]

    @property
    def y(self) -> Fraction:
        return self.coords[1]

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __add__(self, other):
        _check_same_dim(self, other)
        return Point(*(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        _check_same_dim(self, other)
        return Point(*(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k) -> "Point":
        k = scalar(k)
        return Point(*(k * c for c in self.coords))

    def dot(self, other) -> Fraction:
        _check_same_dim(self, other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def __repr__(self):
        return "Point(%s)" % ", ".join(str(c) for c in self.coords)


def _check_same_dim(a: Point, b: Point):
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


class ContainmentVerdict(Enum):
    INTERIOR = "INTERIOR"
    BOUNDARY = "BOUNDARY"
    OUTSIDE = "OUTSIDE"

    @property
    def in_closed(self) -> bool:
        return self is not ContainmentVerdict.OUTSIDE


class Hyperplane:
    """Hyperplane {x : normal . x = offset} in canonical form.

    Canonical form scales so the first nonzero normal coordinate is +1, which
    makes equality of hyperplanes a plain field comparison.
    """

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        normal = tuple(scalar(c) for c in normal)
        offset = scalar(offset)
        lead = next((c for c in normal if c != 0), None)
        if lead is None:
            raise DomainError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", tuple(c / lead for c in normal))
        object.__setattr__(self, "offset", offset / lead)

    def __setattr__(self, name, value):
        raise AttributeError("Hyperplane is immutable")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def side(self, p: Point) -> Fraction:
        """normal . p - offset; sign classifies the two open half-spaces."""
        if p.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {p.dim} vs {self.dim}")
        return sum((a * b for a, b in zip(self.normal, p.coords)), Fraction(0)) - self.offset

    def contains(self, p: Point) -> bool:
        return self.side(p) == 0

    def __eq__(self, other):
        return (
            isinstance(other, Hyperplane)
            and self.normal == other.normal
            and self.offset == other.offset
        )

    def __hash__(self):
        return hash((self.normal, self.offset))

    def __repr__(self):
        terms = " + ".join(f"{c}*x{i}" for i, c in enumerate(self.normal) if c != 0)
        return f"Hyperplane({terms} = {self.offset})"


# ---------------------------------------------------------------------------
# Integer homogeneous coordinates (internal fast path)
# ---------------------------------------------------------------------------

def homog(p: Point) -> tuple:
    """(X0, ..., Xd-1, W) integers with W > 0 and p = (X0/W, ..., Xd-1/W)."""
    dens = [c.denominator for c in p.coords]
    w = 1
    for d in dens:
        w = w * d // gcd(w, d)
    return tuple(c.numerator * (w // c.denominator) for c in p.coords) + (w,)


def reduce_homog(h: tuple) -> tuple:
    """Canonical reduced form of a homogeneous tuple (gcd 1, last entry > 0)."""
    g = 0
    for v in h:
        g = gcd(g, abs(v))
    if g > 1:
        h = tuple(v // g for v in h)
    if h[-1] < 0:
        h = tuple(-v for v in h)
    return h


def dehomog(h: tuple) -> Point:
    w = h[-1]
    return Point(*(Fraction(v, w) for v in h[:-1]))


def _int_det(rows) -> int:
    """Exact determinant of a square integer matrix (expansion / Bareiss)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # Bareiss fraction-free elimination for n >= 4.
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _orientation_homog(hpts) -> int:
    """Sign of the homogeneous orientation determinant; W > 0 rows required."""
    det = _int_det(hpts)
    return (det > 0) - (det < 0)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------

def orientation(points) -> int:
    """Sign in {-1, 0, +1} of the (d+1)x(d+1) homogeneous determinant.

    Convention: a counterclockwise planar triple gives +1.
    """
    points = list(points)
    d = points[0].dim
    for p in points:
        if p.dim != d:
            raise DimensionError("orientation: all points must share one dimension")
    if len(points) != d + 1:
        raise DimensionError(f"orientation in R^{d} needs {d + 1} points, got {len(points)}")
    return _orientation_homog([homog(p) for p in points])


def _solve_exact(a_rows, b_col):
    """Solve A x = b exactly over the rationals.

    Returns ("unique", xs), ("inconsistent", None), or ("underdetermined", None).
    """
    rows = [list(r) + [bv] for r, bv in zip(a_rows, b_col)]
    nrows = len(rows)
    ncols = len(a_rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rows[r] = [v / rows[r][c] for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][-1] != 0:
            return ("inconsistent", None)
    if len(pivots) < ncols:
        return ("underdetermined", None)
    xs = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        xs[c] = rows[i][-1]
    return ("unique", xs)


def _in_closed_hull(q: Point, points) -> bool:
    """Exact membership of q in the closed convex hull of an arbitrary tuple.

    Caratheodory: q is in the hull iff it is a convex combination of some
    affinely independent subset. Subset counts here are tiny (<= d+1).
    """
    pts = list(points)
    for k in range(1, len(pts) + 1):
        for subset in itertools.combinations(pts, k):
            if k == 1:
                if q == subset[0]:
                    return True
                continue
            base = subset[0]
            a_rows = [
                [subset[j + 1].coords[i] - base.coords[i] for j in range(k - 1)]
                for i in range(q.dim)
            ]
            b_col = [q.coords[i] - base.coords[i] for i in range(q.dim)]
            status, mu = _solve_exact(a_rows, b_col)
            if status != "unique":
                continue
            lam0 = 1 - sum(mu, Fraction(0))
            if lam0 >= 0 and all(m >= 0 for m in mu):
                return True
    return False


def point_in_simplex(q: Point, vertices) -> ContainmentVerdict:
    """Verdict for the CLOSED simplex spanned by d+1 vertices in R^d.

    INTERIOR iff every barycentric coordinate is > 0, BOUNDARY iff all are
    >= 0 with at least one zero. Affinely dependent vertex tuples never yield
    INTERIOR: the verdict is BOUNDARY exactly when q lies in the closed hull.
    """
    vertices = list(vertices)
    d = q.dim
    if len(vertices) != d + 1 or any(v.dim != d for v in vertices):
        raise DimensionError(f"simplex in R^{d} needs {d + 1} vertices of dimension {d}")
    hv = [homog(v) for v in vertices]
    s0 = _orientation_homog(hv)
    if s0 == 0:
        if _in_closed_hull(q, vertices):
            return ContainmentVerdict.BOUNDARY
        return ContainmentVerdict.OUTSIDE
    hq = homog(q)
    on_boundary = False
    for i in range(d + 1):
        rows = hv[:i] + [hq] + hv[i + 1:]
        s = _orientation_homog(rows)
        if s == 0:
            on_boundary = True
        elif s != s0:
            return ContainmentVerdict.OUTSIDE
    return ContainmentVerdict.BOUNDARY if on_boundary else ContainmentVerdict.INTERIOR


def project_onto_hyperplane(q: Point, h: Hyperplane) -> Point:
    """Orthogonal projection of q onto h; exact rational output."""
    if q.dim != h.dim:
        raise DimensionError(f"dimension mismatch: {q.dim} vs {h.dim}")
    n2 = sum((c * c for c in h.normal), Fraction(0))
    t = h.side(q) / n2
    return Point(*(c - t * nc for c, nc in zip(q.coords, h.normal)))


def _cross2(ax, ay, bx, by):
    return ax * by - ay * bx


def segment_crosses_ray(a: Point, b: Point, q: Point, direction: Point) -> bool:
    """True iff the closed segment [a, b] meets the closed ray {q + t*dir, t >= 0}.

    Planar only. q on the segment itself is a caller error (general position).
    """
    for p in (a, b, q, direction):
        if p.dim != 2:
            raise DimensionError("segment_crosses_ray is planar only")
    if direction.x == 0 and direction.y == 0:
        raise DomainError("ray direction must be nonzero")
    ab = b - a
    aq = q - a
    if _cross2(ab.x, ab.y, aq.x, aq.y) == 0:
        # q on the segment's supporting line; on the segment itself is degenerate
        lo, hi = sorted([Fraction(0), ab.dot(ab)])
        t = aq.dot(ab)
        if lo <= t <= hi:
            raise DegeneracyError("query point lies on the segment")
    det = _cross2(ab.x, ab.y, -direction.x, -direction.y)
    rhs = q - a
    if det != 0:
        s = _cross2(rhs.x, rhs.y, -direction.x, -direction.y) / det
        t = _cross2(ab.x, ab.y, rhs.x, rhs.y) / det
        return 0 <= s <= 1 and t >= 0
    # Ray parallel to the segment: they meet only if collinear and overlapping.
    if _cross2(ab.x, ab.y, rhs.x, rhs.y) != 0:
        return False
    d2 = direction.dot(direction)
    ta = (a - q).dot(direction) / d2
    tb = (b - q).dot(direction) / d2
    return max(ta, tb) >= 0


def general_position_report(points) -> list:
    """Violation witnesses for a point tuple: duplicates and dependent (d+1)-tuples.

    Empty list iff the points are in general position.
    """
    pts = list(points)
    if not pts:
        raise DomainError("general_position_report needs at least one point")
    d = pts[0].dim
    for p in pts:
        if p.dim != d:
            raise DimensionError("all points must share one dimension")
    out = []
    for i, j in itertools.combinations(range(len(pts)), 2):
        if pts[i] == pts[j]:
            out.append(("duplicate", (i, j)))
    if len(pts) >= d + 1:
        hpts = [homog(p) for p in pts]
        kind = "collinear" if d == 2 else "dependent"
        for idx in itertools.combinations(range(len(pts)), d + 1):
            if _orientation_homog([hpts[i] for i in idx]) == 0:
                out.append((kind, idx))
    return out


def line_coeffs_int(h: Hyperplane) -> tuple:
    """Planar line as reduced integers (a, b, c) with ax + by = c."""
    if h.dim != 2:
        raise DimensionError("line_coeffs_int is planar only")
    a, b = h.normal
    c = h.offset
    w = 1
    for den in (a.denominator, b.denominator, c.denominator):
        w = w * den // gcd(w, den)
    ia, ib, ic = (a.numerator * (w // a.denominator),
                  b.numerator * (w // b.denominator),
                  c.numerator * (w // c.denominator))
    g = gcd(gcd(abs(ia), abs(ib)), abs(ic))
    if g > 1:
        ia, ib, ic = ia // g, ib // g, ic // g
    return (ia, ib, ic)


def intersect_lines_homog(l1: tuple, l2: tuple) -> tuple:
    """Homogeneous intersection (X, Y, W) of integer lines; W == 0 iff parallel."""
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    x = c1 * b2 - b1 * c2
    y = a1 * c2 - c1 * a2
    w = a1 * b2 - a2 * b1
    if w < 0:
        x, y, w = -x, -y, -w
    return (x, y, w)


def line_through_homog(p: tuple, q: tuple) -> tuple:
    """Integer line coefficients (a, b, c) through two homogeneous points."""
    x1, y1, w1 = p
    x2, y2, w2 = q
    a = y1 * w2 - y2 * w1
    b = x2 * w1 - x1 * w2
    c = x2 * y1 - x1 * y2
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    if g > 1:
        a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return (a, b, c)


def lines_general_position_report(lines) -> list:
    """Violations for a planar line family: parallel or coincident pairs and
    concurrent triples. Empty list iff in general position."""
    ls = list(lines)
    for h in ls:
        if h.dim != 2:
            raise DimensionError("lines_general_position_report is planar only")
    out = []
    coeffs = [line_coeffs_int(h) for h in ls]
    for i, j in itertools.combinations(range(len(ls)), 2):
        if ls[i].normal == ls[j].normal:
            kind = "coincident" if ls[i].offset == ls[j].offset else "parallel"
            out.append((kind, (i, j)))
    for i, j, k in itertools.combinations(range(len(ls)), 3):
        if ls[i].normal == ls[j].normal or ls[i].normal == ls[k].normal \
                or ls[j].normal == ls[k].normal:
            continue
        x, y, w = intersect_lines_homog(coeffs[i], coeffs[j])
        a, b, c = coeffs[k]
        if a * x + b * y == c * w:
            out.append(("concurrent", (i, j, k)))
    return out
