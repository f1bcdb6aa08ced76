"""Simplicial depth: exhaustive and angular-sweep counting, the selection
bound registry, and global max-depth search over the pair-line arrangement.

Closed containment is used throughout, which makes depth an upper
semicontinuous function of the query point; the global maximum is therefore
attained at a vertex of the arrangement of lines through data-point pairs (or
at a data point), and a finite candidate scan is complete.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .errors import (
    DegeneracyError,
    DimensionError,
    DomainError,
    InternalError,
)
from .exactgeom import (
    ContainmentVerdict,
    Point,
    dehomog,
    general_position_report,
    homog,
    intersect_lines_homog,
    line_through_homog,
    point_in_simplex,
    reduce_homog,
)
from enum import Enum

# Small-n correction subtracted as SLACK_NUMERATOR/n from the raw bound in
# reports; the raw bound itself only holds asymptotically. The value 3 was
# calibrated against exhaustive max-depth runs at n <= 12 before the
# acceptance fixtures were frozen.
SLACK_NUMERATOR = 3


class BoundVariant(Enum):
    GROMOV = "GROMOV"
    BARANY = "BARANY"


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient with strict domain checks."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binom({n}, {k}) is outside the domain 0 <= k <= n")
    return math.comb(n, k)


def selection_bound(d: int, variant: BoundVariant = BoundVariant.GROMOV) -> Fraction:
    """Guaranteed covered fraction for the d-dimensional selection theorem.

    GROMOV is the stronger constant 2d/((d+1)!(d+1)); BARANY is the weaker
    classical constant 1/(d+1)^d.
    """
    if d < 1:
        raise DomainError("selection_bound needs d >= 1")
    if variant is BoundVariant.GROMOV:
        return Fraction(2 * d, math.factorial(d + 1) * (d + 1))
    if variant is BoundVariant.BARANY:
        return Fraction(1, (d + 1) ** d)
    raise DomainError(f"unknown bound variant: {variant!r}")


@dataclass(frozen=True)
class LabeledPointSet:
    """Finite point set, optionally colored, with provenance for reports."""

    points: tuple
    colors: tuple | None = None
    provenance: str | None = None

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise DomainError("point set must be nonempty")
        d = pts[0].dim
        for p in pts:
            if p.dim != d:
                raise DimensionError("all points in a set must share one dimension")
        if self.colors is not None:
            cols = tuple(self.colors)
            object.__setattr__(self, "colors", cols)
            if len(cols) != len(pts):
                raise DomainError("colors must label every point")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def color_classes(self) -> dict:
        """Mapping color -> tuple of point indices; classes partition the set."""
        if self.colors is None:
            raise DomainError("point set carries no colors")
        classes = {}
        for i, c in enumerate(self.colors):
            classes.setdefault(c, []).append(i)
        return {c: tuple(ix) for c, ix in sorted(classes.items(), key=lambda kv: str(kv[0]))}


@dataclass(frozen=True)
class DepthReport:
    """Exact depth count with bound comparisons.

    ``count`` uses closed containment; ``strict_count`` (when computed) counts
    only strict interior containment, so ``count - strict_count`` simplices
    touch the query point on their boundary.
    """

    count: int
    total: int
    fraction: Fraction
    bound: Fraction
    meets_bound: bool
    slack_bound: Fraction
    meets_slack_bound: bool
    strict_count: int | None = None
    witnesses: tuple = ()
    method: str = "naive"

    @property
    def boundary_count(self) -> int | None:
        if self.strict_count is None:
            return None
        return self.count - self.strict_count


def _depth_report(count, total, n, d, *, strict=None, witnesses=(), method="naive"):
    bound = selection_bound(d, BoundVariant.GROMOV)
    frac = Fraction(count, total)
    slack = bound - Fraction(SLACK_NUMERATOR, n)
    return DepthReport(
        count=count,
        total=total,
        fraction=frac,
        bound=bound,
        meets_bound=frac >= bound,
        slack_bound=slack,
        meets_slack_bound=frac >= slack,
        strict_count=strict,
        witnesses=tuple(witnesses),
        method=method,
    )


def depth_naive(q: Point, pset: LabeledPointSet, witness_limit: int = 0) -> DepthReport:
    """Exhaustive closed simplicial depth in any dimension.

    Counts the (d+1)-subsets of the set whose closed simplex contains q.
    """
    d = pset.dim
    if q.dim != d:
        raise DimensionError(f"query dimension {q.dim} != data dimension {d}")
    n = pset.n
    if n < d + 1:
        raise DomainError(f"depth query needs at least d+1 = {d + 1} points, got {n}")
    count = 0
    strict = 0
    witnesses = []
    for idx in itertools.combinations(range(n), d + 1):
        verdict = point_in_simplex(q, [pset.points[i] for i in idx])
        if verdict is ContainmentVerdict.OUTSIDE:
            continue
        count += 1
        if verdict is ContainmentVerdict.INTERIOR:
            strict += 1
        if len(witnesses) < witness_limit:
            witnesses.append(idx)
    return _depth_report(count, binom(n, d + 1), n, d,
                         strict=strict, witnesses=witnesses, method="naive")


# ---------------------------------------------------------------------------
# Angular counting engine (integer arithmetic throughout)
# ---------------------------------------------------------------------------

def _icross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _half(d):
    # 0 for angles in [0, pi) (positive x-axis included), 1 for [pi, 2pi)
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = _icross(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _directions_around(qh, pts_h):
    """Reduced integer directions from q to each point; drops points equal to q."""
    qx, qy, qw = qh
    dirs = []
    for px, py, pw in pts_h:
        ix = px * qw - qx * pw
        iy = py * qw - qy * pw
        if ix == 0 and iy == 0:
            continue
        g = gcd(abs(ix), abs(iy))
        dirs.append((ix // g, iy // g))
    return dirs


def _avoiding_triples(dirs):
    """Number of 3-subsets of the direction multiset fitting strictly inside an
    open half-plane through the origin. Ties (equal directions) are broken by
    charging each triple to its lowest-index member at the minimal angle."""
    groups = {}
    for d in dirs:
        groups[d] = groups.get(d, 0) + 1
    keys = sorted(groups.keys(), key=cmp_to_key(_angle_cmp))
    counts = [groups[k] for k in keys]
    g_count = len(keys)
    avoiding = 0
    end = 1
    insum = 0
    for a in range(g_count):
        if end < a + 1:
            end = a + 1
            insum = 0
        while end < a + g_count and _icross(keys[a], keys[end % g_count]) > 0:
            insum += counts[end % g_count]
            end += 1
        c = counts[a]
        for e in range(c):
            u = insum + e
            avoiding += u * (u - 1) // 2
        if a + 1 < g_count and end > a + 1:
            insum -= counts[a + 1]
    return avoiding


def _closed_depth_homog(qh, pts_h):
    """Closed simplicial depth of q via rotational counting; valid at ANY query
    point, including data points and points collinear with data pairs."""
    n = len(pts_h)
    dirs = _directions_around(qh, pts_h)
    return math.comb(n, 3) - _avoiding_triples(dirs)


def closed_depth_count(q: Point, points) -> int:
    """Closed planar simplicial depth by rotational counting, O(n log n).

    Equals depth_naive's count for every planar input; unlike the restricted
    sweep it needs no general-position assumptions about q.
    """
    pts = list(points)
    if q.dim != 2 or any(p.dim != 2 for p in pts):
        raise DimensionError("closed_depth_count is planar only")
    if len(pts) < 3:
        raise DomainError("need at least 3 points")
    return _closed_depth_homog(homog(q), [homog(p) for p in pts])


def depth_planar_sweep(q: Point, pset: LabeledPointSet) -> DepthReport:
    """Planar depth via the angular-sweep identity count = C(n,3) - sum C(u_i, 2),
    where u_i counts points strictly left of the directed line from q through
    point i.

    Requires q distinct from the data and no data pair collinear with q; any
    collinearity falls back to the exhaustive count (method "naive_fallback").
    """
    if pset.dim != 2 or q.dim != 2:
        raise DimensionError("depth_planar_sweep is planar only")
    n = pset.n
    if n < 3:
        raise DomainError("need at least 3 points")
    if any(q == p for p in pset.points):
        raise DegeneracyError("query point coincides with a data point")
    qh = homog(q)
    pts_h = [homog(p) for p in pset.points]
    dirs = _directions_around(qh, pts_h)
    axes = set()
    degenerate = False
    for d in dirs:
        axis = d if _half(d) == 0 else (-d[0], -d[1])
        if axis in axes:
            degenerate = True  # equal or antipodal directions: pair collinear with q
            break
        axes.add(axis)
    if degenerate:
        rep = depth_naive(q, pset)
        return replace(rep, method="naive_fallback")
    count = math.comb(n, 3) - _avoiding_triples(dirs)
    # no data pair is collinear with q, so q touches no simplex boundary
    return _depth_report(count, binom(n, 3), n, 2, strict=count, method="sweep")


def colorful_depth(q: Point, pset: LabeledPointSet, witness_limit: int = 0) -> DepthReport:
    """Depth over rainbow simplices: one vertex from each of d+1 color classes."""
    d = pset.dim
    if q.dim != d:
        raise DimensionError(f"query dimension {q.dim} != data dimension {d}")
    classes = pset.color_classes()
    if len(classes) != d + 1:
        raise DomainError(f"colorful depth needs exactly d+1 = {d + 1} color classes, "
                          f"got {len(classes)}")
    class_indices = list(classes.values())
    total = 1
    for ix in class_indices:
        total *= len(ix)
    count = 0
    strict = 0
    witnesses = []
    for idx in itertools.product(*class_indices):
        verdict = point_in_simplex(q, [pset.points[i] for i in idx])
        if verdict is ContainmentVerdict.OUTSIDE:
            continue
        count += 1
        if verdict is ContainmentVerdict.INTERIOR:
            strict += 1
        if len(witnesses) < witness_limit:
            witnesses.append(idx)
    return _depth_report(count, total, pset.n, d,
                         strict=strict, witnesses=witnesses, method="colorful")


@dataclass(frozen=True)
class CandidateSet:
    """Deduplicated max-depth candidates: data points and pair-line crossings."""

    points: tuple
    tags: tuple  # "data" | "intersection", aligned with points


def _candidate_homogs(pts_h):
    """Reduced homogeneous candidates: data points plus all pairwise
    intersections of distinct lines through data-point pairs."""
    seen = {}
    for h in pts_h:
        key = reduce_homog(h)
        if key not in seen:
            seen[key] = "data"
    lines = {}
    for i, j in itertools.combinations(range(len(pts_h)), 2):
        if reduce_homog(pts_h[i]) == reduce_homog(pts_h[j]):
            continue
        lines[line_through_homog(pts_h[i], pts_h[j])] = None
    line_list = list(lines)
    for a, b in itertools.combinations(line_list, 2):
        x, y, w = intersect_lines_homog(a, b)
        if w == 0:
            continue
        key = reduce_homog((x, y, w))
        if key not in seen:
            seen[key] = "intersection"
    return list(seen.items())


def candidate_vertices(pset: LabeledPointSet) -> CandidateSet:
    """Complete search space for the planar max-depth point."""
    if pset.dim != 2:
        raise DimensionError("candidate_vertices is planar only")
    if pset.n < 2:
        raise DomainError("need at least 2 points")
    items = _candidate_homogs([homog(p) for p in pset.points])
    return CandidateSet(points=tuple(dehomog(k) for k, _ in items),
                        tags=tuple(tag for _, tag in items))


def _homog_lex_cmp(a, b):
    """Lexicographic (x, y) order on homogeneous points, exact."""
    ax, ay, aw = a
    bx, by, bw = b
    left, right = ax * bw, bx * aw
    if left != right:
        return -1 if left < right else 1
    left, right = ay * bw, by * aw
    if left != right:
        return -1 if left < right else 1
    return 0


def _better(count_a, key_a, count_b, key_b):
    """True iff (count_a, key_a) beats (count_b, key_b): higher count first,
    then lexicographically smaller point."""
    if count_a != count_b:
        return count_a > count_b
    return _homog_lex_cmp(key_a, key_b) < 0


def _scan_chunk(args):
    keys, pts_h = args
    best_key = None
    best_count = -1
    for key in keys:
        c = _closed_depth_homog(key, pts_h)
        if best_key is None or _better(c, key, best_count, best_key):
            best_key, best_count = key, c
    return best_count, best_key


def _scan_best(keys, pts_h, threads=1):
    if threads <= 1 or len(keys) < 64:
        return _scan_chunk((keys, pts_h))
    chunk = (len(keys) + threads - 1) // threads
    payloads = [(keys[i:i + chunk], pts_h) for i in range(0, len(keys), chunk)]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        results = list(ex.map(_scan_chunk, payloads))
    best_count, best_key = results[0]
    for c, k in results[1:]:
        if _better(c, k, best_count, best_key):
            best_count, best_key = c, k
    return best_count, best_key


def max_depth_point(pset: LabeledPointSet, witness_limit: int = 3,
                    threads: int = 1):
    """Global planar max of closed simplicial depth.

    Scans every candidate vertex (complete by upper semicontinuity), breaking
    ties toward the lexicographically smallest point. The winner's count is
    re-derived by exhaustive enumeration as an internal consistency check.
    """
    if pset.dim != 2:
        raise DimensionError("max_depth_point is planar only")
    if pset.n < 3:
        raise DomainError("need at least 3 points")
    violations = general_position_report(pset.points)
    if violations:
        raise DegeneracyError("point set is not in general position", violations)
    pts_h = [homog(p) for p in pset.points]
    keys = [k for k, _ in _candidate_homogs(pts_h)]
    best_count, best_key = _scan_best(keys, pts_h, threads)
    q = dehomog(best_key)
    report = depth_naive(q, pset, witness_limit=witness_limit)
    if report.count != best_count:
        raise InternalError(
            f"candidate scan count {best_count} != exhaustive count {report.count}")
    return q, replace(report, method="candidate_scan")
