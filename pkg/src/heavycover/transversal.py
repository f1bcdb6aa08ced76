"""Affine-flat transversals: verify touched-tuple fractions in general (d, m)
and constructively find the transversal line for two planar point sets.

A (d-m+1)-tuple touches an m-flat iff its convex hull meets the flat, which
after orthogonal projection along the flat's directions becomes a closed
simplex-containment test in R^(d-m).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .errors import DegeneracyError, DimensionError, DomainError, InternalError
from .exactgeom import ContainmentVerdict, Point, point_in_simplex
from .selection import (
    BoundVariant,
    LabeledPointSet,
    SLACK_NUMERATOR,
    _angle_cmp,
    binom,
    selection_bound,
)


@dataclass(frozen=True)
class AffineFlat:
    """m-dimensional affine flat: base point plus m independent directions."""

    base: Point
    directions: tuple

    def __post_init__(self):
        dirs = tuple(self.directions)
        object.__setattr__(self, "directions", dirs)
        d = self.base.dim
        for v in dirs:
            if v.dim != d:
                raise DimensionError("flat directions must match the base dimension")
        if not 0 <= len(dirs) < d:
            raise DomainError(f"flat dimension must satisfy 0 <= m < d, got m={len(dirs)}")
        if dirs and _rank([list(v.coords) for v in dirs]) != len(dirs):
            raise DomainError("flat directions must be linearly independent")

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def m(self) -> int:
        return len(self.directions)


def _rank(rows):
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    rank = 0
    for c in range(nc):
        pivot = next((i for i in range(rank, nr) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(nr):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _orthogonalize(vectors):
    """Gram-Schmidt without normalization: pairwise orthogonal rational
    vectors with the same span; zero remainders are dropped."""
    basis = []
    for v in vectors:
        r = list(v)
        for b in basis:
            bb = sum(x * x for x in b)
            coef = sum(x * y for x, y in zip(r, b)) / bb
            r = [x - coef * y for x, y in zip(r, b)]
        if any(x != 0 for x in r):
            basis.append(r)
    return basis


def complement_basis(flat: AffineFlat):
    """Orthogonal rational basis of the orthogonal complement of the flat's
    direction span (not unit vectors; containment tests are affine-invariant)."""
    d = flat.dim
    dir_basis = _orthogonalize([v.coords for v in flat.directions])
    out = []
    for i in range(d):
        e = [Fraction(0)] * d
        e[i] = Fraction(1)
        r = e
        for b in dir_basis + out:
            bb = sum(x * x for x in b)
            coef = sum(x * y for x, y in zip(r, b)) / bb
            r = [x - coef * y for x, y in zip(r, b)]
        if any(x != 0 for x in r):
            out.append(r)
        if len(out) == d - flat.m:
            break
    if len(out) != d - flat.m:
        raise InternalError("complement basis construction failed")
    return [Point(*b) for b in out]


def _complement_coords(p: Point, basis):
    return Point(*(p.dot(b) / b.dot(b) for b in basis))


def project_to_complement(pset: LabeledPointSet, flat: AffineFlat) -> LabeledPointSet:
    """Coordinates of each point's orthogonal projection onto the complement of
    the flat's direction space, in the complement_basis chart."""
    if pset.dim != flat.dim:
        raise DimensionError("point set and flat dimensions differ")
    basis = complement_basis(flat)
    pts = tuple(_complement_coords(p, basis) for p in pset.points)
    return LabeledPointSet(pts, colors=pset.colors, provenance=pset.provenance)


def tuple_touches_flat(points, flat: AffineFlat) -> bool:
    """True iff the convex hull of the (d-m+1)-tuple meets the flat (closed)."""
    points = list(points)
    d = flat.dim
    k = d - flat.m + 1
    if len(points) != k:
        raise DomainError(f"expected a {k}-tuple for d={d}, m={flat.m}")
    for p in points:
        if p.dim != d:
            raise DimensionError("tuple dimension mismatch")
    basis = complement_basis(flat)
    image = [_complement_coords(p, basis) for p in points]
    target = _complement_coords(flat.base, basis)
    return point_in_simplex(target, image) is not ContainmentVerdict.OUTSIDE


@dataclass(frozen=True)
class SetTouchReport:
    """Touched-tuple accounting for one point set against one flat."""

    count: int
    total: int
    fraction: Fraction
    bound: Fraction
    meets_bound: bool
    slack_bound: Fraction
    meets_slack_bound: bool
    median_floor_count: int | None = None
    meets_median_floor: bool | None = None


@dataclass(frozen=True)
class TransversalReport:
    d: int
    m: int
    per_set: tuple

    @property
    def all_meet_slack(self) -> bool:
        return all(r.meets_slack_bound for r in self.per_set)


def transversal_bound(d: int, m: int) -> Fraction:
    """2(d-m)/((d-m+1)!(d-m+1)); the selection bound one codimension down."""
    if not 0 <= m < d:
        raise DomainError("need 0 <= m < d")
    return selection_bound(d - m, BoundVariant.GROMOV)


def verify_transversal(flat: AffineFlat, sets) -> TransversalReport:
    """Exact per-set fractions of (d-m+1)-tuples whose hulls touch the flat."""
    sets = list(sets)
    d, m = flat.dim, flat.m
    if len(sets) != m + 1:
        raise DomainError(f"need m+1 = {m + 1} point sets, got {len(sets)}")
    k = d - m + 1
    bound = transversal_bound(d, m)
    basis = complement_basis(flat)
    target = _complement_coords(flat.base, basis)
    per_set = []
    for pset in sets:
        if pset.dim != d:
            raise DimensionError("point set dimension mismatch")
        if pset.n < k:
            raise DomainError(f"each set needs at least {k} points")
        image = [_complement_coords(p, basis) for p in pset.points]
        count = 0
        for idx in itertools.combinations(range(pset.n), k):
            if point_in_simplex(target, [image[i] for i in idx]) \
                    is not ContainmentVerdict.OUTSIDE:
                count += 1
        total = binom(pset.n, k)
        frac = Fraction(count, total)
        slack = bound - Fraction(SLACK_NUMERATOR, pset.n)
        per_set.append(SetTouchReport(
            count=count, total=total, fraction=frac, bound=bound,
            meets_bound=frac >= bound, slack_bound=slack,
            meets_slack_bound=frac >= slack))
    return TransversalReport(d=d, m=m, per_set=tuple(per_set))


def _median_floor_count(n: int) -> int:
    a = (n - 1) // 2
    return a * (n - 1 - a)


def _reduce_dir(x, y):
    g = gcd(abs(x), abs(y))
    return (x // g, y // g)


def _median_interval(vals):
    s = sorted(vals)
    n = len(s)
    return s[(n - 1) // 2], s[n // 2]


def find_transversal_line_2d(set0: LabeledPointSet, set1: LabeledPointSet):
    """Transversal line for two planar sets via an exact direction sweep.

    Critical normal directions are the perpendiculars of all difference
    vectors of the combined set; between consecutive criticals the projection
    orders (and hence both median intervals) are fixed, so testing one exact
    midpoint direction per interval plus the criticals themselves is a
    complete scan. The returned line passes through the midpoint of the
    overlap of the two median intervals and is guaranteed to touch at least
    floor((n_i-1)/2) * ceil((n_i-1)/2) of each set's C(n_i, 2) pairs.
    """
    for pset in (set0, set1):
        if pset.dim != 2:
            raise DimensionError("find_transversal_line_2d is planar only")
        if pset.n < 2:
            raise DomainError("each set needs at least 2 points")
    combined = list(set0.points) + list(set1.points)
    for i, j in itertools.combinations(range(len(combined)), 2):
        if combined[i] == combined[j]:
            raise DegeneracyError("coincident points across the two sets",
                                  [("duplicate", (i, j))])
    criticals = set()
    for a, b in itertools.combinations(combined, 2):
        diff = b - a
        dx = diff.x.numerator * diff.y.denominator
        dy = diff.y.numerator * diff.x.denominator
        v = _reduce_dir(-dy, dx)
        criticals.add(v)
        criticals.add((-v[0], -v[1]))
    ordered = sorted(criticals, key=cmp_to_key(_angle_cmp))
    candidates = []
    for a, b in zip(ordered, ordered[1:] + ordered[:1]):
        candidates.append(_reduce_dir(a[0] + b[0], a[1] + b[1]))
    candidates.extend(ordered)
    for vx, vy in candidates:
        proj0 = [vx * p.x + vy * p.y for p in set0.points]
        proj1 = [vx * p.x + vy * p.y for p in set1.points]
        lo0, hi0 = _median_interval(proj0)
        lo1, hi1 = _median_interval(proj1)
        lo, hi = max(lo0, lo1), min(hi0, hi1)
        if lo > hi:
            continue
        c = (lo + hi) / 2
        den = vx * vx + vy * vy
        flat = AffineFlat(base=Point(Fraction(vx, den) * c, Fraction(vy, den) * c),
                          directions=(Point(-vy, vx),))
        report = verify_transversal(flat, [set0, set1])
        per_set = []
        for pset, rep in zip((set0, set1), report.per_set):
            floor_count = _median_floor_count(pset.n)
            if rep.count < floor_count:
                raise InternalError(
                    f"median construction fell below its floor: {rep.count} < {floor_count}")
            per_set.append(SetTouchReport(
                count=rep.count, total=rep.total, fraction=rep.fraction,
                bound=rep.bound, meets_bound=rep.meets_bound,
                slack_bound=rep.slack_bound, meets_slack_bound=rep.meets_slack_bound,
                median_floor_count=floor_count, meets_median_floor=True))
        return flat, TransversalReport(d=2, m=1, per_set=tuple(per_set))
    raise InternalError("direction sweep found no median overlap; the parity "
                        "argument guarantees one, so this is a bug")
