"""Dual depth in the plane: triples of lines surrounding a query point.

Three pairwise nonparallel lines surround a point when it lies in the closed
bounded cell of their arrangement (the triangle of their pairwise
intersections). The count over all 3-subsets of a line family is the dual
depth; projecting the query onto each line turns it into a simplicial-depth
question, which both the fast counting route and the exposure-direction
analysis exploit.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd

from .errors import (
    DegeneracyError,
    DimensionError,
    DomainError,
    InternalError,
)
from .exactgeom import (
    ContainmentVerdict,
    Hyperplane,
    Point,
    _in_closed_hull,
    _orientation_homog,
    dehomog,
    homog,
    intersect_lines_homog,
    line_coeffs_int,
    lines_general_position_report,
    point_in_simplex,
    project_onto_hyperplane,
    reduce_homog,
    scalar,
)
from .selection import (
    _avoiding_triples,
    _better,
    _depth_report,
    _directions_around,
    _half,
    _homog_lex_cmp,
    _icross,
    binom,
    DepthReport,
)

DUAL_BOUND = Fraction(2, 9)


@dataclass(frozen=True)
class LineFamily:
    """Planar line family, pairwise distinct in canonical form."""

    lines: tuple
    provenance: str | None = None

    def __post_init__(self):
        ls = tuple(self.lines)
        object.__setattr__(self, "lines", ls)
        if not ls:
            raise DomainError("line family must be nonempty")
        for h in ls:
            if h.dim != 2:
                raise DimensionError("line families are planar")
        if len(set(ls)) != len(ls):
            raise DomainError("line family has coincident members")

    @property
    def n(self) -> int:
        return len(self.lines)


def _coeffs(family: LineFamily):
    return [line_coeffs_int(h) for h in family.lines]


def _closed_code_homog(qh, tri):
    """0 outside, 1 boundary, 2 interior for q vs a homogeneous triangle."""
    v1, v2, v3 = tri
    s0 = _orientation_homog([v1, v2, v3])
    if s0 == 0:
        inside = _in_closed_hull(dehomog(qh), [dehomog(v) for v in tri])
        return 1 if inside else 0
    boundary = False
    for rows in ((qh, v2, v3), (v1, qh, v3), (v1, v2, qh)):
        s = _orientation_homog(rows)
        if s == 0:
            boundary = True
        elif s != s0:
            return 0
    return 1 if boundary else 2


def surround_direct(q: Point, lines) -> bool:
    """True iff the three lines are pairwise nonparallel and q lies in the
    closed triangle of their pairwise intersections (the bounded cell)."""
    lines = list(lines)
    if len(lines) != 3:
        raise DomainError("surround tests take exactly three lines")
    if q.dim != 2 or any(h.dim != 2 for h in lines):
        raise DimensionError("surround_direct is planar only")
    cs = [line_coeffs_int(h) for h in lines]
    verts = []
    for a, b in itertools.combinations(range(3), 2):
        x, y, w = intersect_lines_homog(cs[a], cs[b])
        if w == 0:
            return False
        verts.append((x, y, w))
    return _closed_code_homog(homog(q), tuple(verts)) >= 1


def surround_projection(q: Point, lines) -> bool:
    """Surround test via projections: q is surrounded iff it lies in the closed
    triangle of its orthogonal projections onto the three lines.

    Requires q off all three lines and no parallel pair (the equivalence with
    surround_direct is a general-position statement)."""
    lines = list(lines)
    if len(lines) != 3:
        raise DomainError("surround tests take exactly three lines")
    if q.dim != 2 or any(h.dim != 2 for h in lines):
        raise DimensionError("surround_projection is planar only")
    for a, b in itertools.combinations(range(3), 2):
        if lines[a].normal == lines[b].normal:
            raise DegeneracyError("parallel pair: projection equivalence needs "
                                  "pairwise nonparallel lines")
    if any(h.contains(q) for h in lines):
        raise DegeneracyError("query point lies on a line")
    feet = [project_onto_hyperplane(q, h) for h in lines]
    return point_in_simplex(q, feet) is not ContainmentVerdict.OUTSIDE


def _triple_triangles(coeffs):
    """(triple index, triangle) pairs for all 3-subsets with no parallel pair."""
    n = len(coeffs)
    inter = {}
    for i, j in itertools.combinations(range(n), 2):
        inter[(i, j)] = intersect_lines_homog(coeffs[i], coeffs[j])
    triples = []
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = inter[(i, j)], inter[(i, k)], inter[(j, k)]
        if a[2] == 0 or b[2] == 0 or c[2] == 0:
            continue
        triples.append(((i, j, k), (a, b, c)))
    return triples


def dual_depth_naive(q: Point, family: LineFamily, witness_limit: int = 0) -> DepthReport:
    """Exhaustive dual depth: closed surround test on every 3-subset."""
    if q.dim != 2:
        raise DimensionError("dual depth is planar only")
    n = family.n
    if n < 3:
        raise DomainError("dual depth needs at least 3 lines")
    qh = homog(q)
    count = 0
    strict = 0
    witnesses = []
    for idx, tri in _triple_triangles(_coeffs(family)):
        code = _closed_code_homog(qh, tri)
        if code == 0:
            continue
        count += 1
        if code == 2:
            strict += 1
        if len(witnesses) < witness_limit:
            witnesses.append(idx)
    return _depth_report(count, binom(n, 3), n, 2,
                         strict=strict, witnesses=witnesses, method="naive")


def dual_depth_fast(q: Point, family: LineFamily) -> DepthReport:
    """Dual depth as simplicial depth of q in its projections onto the lines,
    counted by the angular sweep.

    Any degeneracy (q on a line, coincident/collinear projections) falls back
    to the exhaustive count; the report's method field records which route ran.
    """
    if q.dim != 2:
        raise DimensionError("dual depth is planar only")
    n = family.n
    if n < 3:
        raise DomainError("dual depth needs at least 3 lines")
    if any(h.contains(q) for h in family.lines):
        return replace(dual_depth_naive(q, family), method="naive_fallback")
    feet = [project_onto_hyperplane(q, h) for h in family.lines]
    qh = homog(q)
    dirs = _directions_around(qh, [homog(f) for f in feet])
    axes = set()
    degenerate = len(dirs) < n
    for d in dirs:
        axis = d if _half(d) == 0 else (-d[0], -d[1])
        if axis in axes:
            degenerate = True
            break
        axes.add(axis)
    if degenerate:
        return replace(dual_depth_naive(q, family), method="naive_fallback")
    count = math.comb(n, 3) - _avoiding_triples(dirs)
    # q off every line means no surrounding triple touches it on its boundary
    return _depth_report(count, binom(n, 3), n, 2, strict=count,
                         method="projection_sweep")


def _arrangement_vertices(coeffs):
    """Reduced homogeneous arrangement vertices, deduplicated, with the index
    pair of one generating line pair each."""
    seen = {}
    for i, j in itertools.combinations(range(len(coeffs)), 2):
        x, y, w = intersect_lines_homog(coeffs[i], coeffs[j])
        if w == 0:
            continue
        key = reduce_homog((x, y, w))
        if key not in seen:
            seen[key] = (i, j)
    return seen


def _dual_scan_chunk(args):
    keys, triangles = args
    best_key = None
    best_count = -1
    for key in keys:
        c = 0
        for _, tri in triangles:
            if _closed_code_homog(key, tri) >= 1:
                c += 1
        if best_key is None or _better(c, key, best_count, best_key):
            best_key, best_count = key, c
    return best_count, best_key


def max_dual_depth_point(family: LineFamily, witness_limit: int = 3,
                         threads: int = 1):
    """Global max of closed dual depth over the arrangement vertices of the
    family (complete under closed containment), lexicographic tie-break.

    The winner's count is re-derived by the exhaustive route as an internal
    consistency check.
    """
    n = family.n
    if n < 3:
        raise DomainError("max_dual_depth_point needs at least 3 lines")
    violations = lines_general_position_report(family.lines)
    if violations:
        raise DegeneracyError("line family is not in general position", violations)
    coeffs = _coeffs(family)
    triangles = _triple_triangles(coeffs)
    keys = list(_arrangement_vertices(coeffs))
    if threads <= 1 or len(keys) < 32:
        best_count, best_key = _dual_scan_chunk((keys, triangles))
    else:
        chunk = (len(keys) + threads - 1) // threads
        payloads = [(keys[i:i + chunk], triangles) for i in range(0, len(keys), chunk)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_dual_scan_chunk, payloads))
        best_count, best_key = results[0]
        for c, k in results[1:]:
            if _better(c, k, best_count, best_key):
                best_count, best_key = c, k
    q = dehomog(best_key)
    report = dual_depth_naive(q, family, witness_limit=witness_limit)
    if report.count != best_count:
        raise InternalError(
            f"vertex scan count {best_count} != exhaustive count {report.count}")
    return q, replace(report, method="vertex_scan")


def base_cut_count(q: Point, i: int, family: LineFamily) -> int:
    """Number of pairs {j, k} (j, k != i) cutting, from the open half-plane
    bounded by the parallel of line i through q on the side away from line i,
    a triangle having q on its base.

    For a generic q this equals the number of surrounding triples containing
    line i, which is the identity the acceptance battery checks.
    """
    n = family.n
    if not 0 <= i < n:
        raise DomainError(f"line index {i} out of range")
    if q.dim != 2:
        raise DimensionError("base_cut_count is planar only")
    coeffs = _coeffs(family)
    for a, b in itertools.combinations(range(n), 2):
        if family.lines[a].normal == family.lines[b].normal:
            raise DegeneracyError("parallel lines in the family")
    qh = homog(q)
    qx, qy, qw = qh
    for a, b, c in coeffs:
        if a * qx + b * qy == c * qw:
            raise DegeneracyError("query point lies on a line")
    ai, bi, ci = coeffs[i]
    # boundary of H: the parallel of line i through q; tau = side of line i
    boundary = (ai * qw, bi * qw, ai * qx + bi * qy)
    g = gcd(gcd(abs(boundary[0]), abs(boundary[1])), abs(boundary[2]))
    boundary = tuple(v // g for v in boundary)
    tau = 1 if ci * qw - (ai * qx + bi * qy) > 0 else -1

    def side_of_boundary(z):
        zx, zy, zw = z
        val = (ai * zx + bi * zy) * qw - (ai * qx + bi * qy) * zw
        return (val > 0) - (val < 0)

    def along(z):
        zx, zy, zw = z
        return Fraction(-bi * zx + ai * zy, zw)

    crossings = {}
    for j in range(n):
        if j == i:
            continue
        crossings[j] = intersect_lines_homog(boundary, coeffs[j])
    s_q = along(qh)
    count = 0
    others = [j for j in range(n) if j != i]
    for j, k in itertools.combinations(others, 2):
        v = intersect_lines_homog(coeffs[j], coeffs[k])
        if side_of_boundary(v) != -tau:
            continue  # apex not strictly inside H (away side)
        s_j, s_k = along(crossings[j]), along(crossings[k])
        if min(s_j, s_k) <= s_q <= max(s_j, s_k):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Exposure analysis
# ---------------------------------------------------------------------------

def _reduce_dir(d):
    x, y = d
    g = gcd(abs(x), abs(y))
    return (x // g, y // g)


def _in_closed_cone(a, b, p):
    """p in the closed cone spanned by non-collinear directions a, b."""
    if _icross(a, b) < 0:
        a, b = b, a
    return _icross(a, p) >= 0 and _icross(p, b) >= 0


def _arc_representative(s, e):
    """An exact direction strictly inside the ccw open arc from s to e."""
    c = _icross(s, e)
    if c > 0:
        m = (s[0] + e[0], s[1] + e[1])
    elif c < 0:
        m = (-(s[0] + e[0]), -(s[1] + e[1]))
    else:
        # antipodal endpoints: quarter-turn ccw from s bisects the half-circle
        m = (-s[1], s[0])
    return _reduce_dir(m)


@dataclass(frozen=True)
class ExposureProfile:
    """Per-direction crossing counts around a query point.

    ``directions`` are the cyclically sorted exact directions from q to its
    projections on the lines; ``arc_counts[i]`` is the number of projection
    pairs whose segment crosses a ray aimed anywhere strictly inside the open
    arc between directions i and i+1.
    """

    directions: tuple
    arc_counts: tuple
    pair_total: int

    @property
    def n_arcs(self) -> int:
        return len(self.directions)

    def count_at(self, direction) -> int:
        """Crossing count for the ray aimed exactly at ``direction`` (closed
        wedges, so critical directions count both adjacent arcs' pairs)."""
        p = _reduce_dir(tuple(direction))
        c = 0
        for a, b in itertools.combinations(self.directions, 2):
            if _in_closed_cone(a, b, p):
                c += 1
        return c

    def directions_inside_arc(self, i: int, count: int = 3):
        """``count`` distinct exact directions strictly inside open arc i,
        found by repeated arc bisection."""
        s = self.directions[i]
        e = self.directions[(i + 1) % self.n_arcs]
        out = []
        frontier = [(s, e)]
        while len(out) < count:
            nxt = []
            for a, b in frontier:
                m = _arc_representative(a, b)
                out.append(m)
                nxt.extend([(a, m), (m, b)])
                if len(out) == count:
                    break
            frontier = nxt
        return out


def _projection_directions(q: Point, lines):
    """Reduced integer directions from q to its projections, index-aligned."""
    qh = homog(q)
    qx, qy, qw = qh
    dirs = []
    for h in lines:
        f = homog(project_onto_hyperplane(q, h))
        ix = f[0] * qw - qx * f[2]
        iy = f[1] * qw - qy * f[2]
        if ix == 0 and iy == 0:
            raise DegeneracyError("query point lies on a line")
        dirs.append(_reduce_dir((ix, iy)))
    return dirs


def _sorted_cyclic(dirs):
    """Distinct directions in cyclic angular order; error on ties/antipodes."""
    from functools import cmp_to_key

    from .selection import _angle_cmp

    for a, b in itertools.combinations(dirs, 2):
        if _icross(a, b) == 0:
            raise DegeneracyError("projection directions are collinear")
    return sorted(dirs, key=cmp_to_key(_angle_cmp))


def _arc_counts(sorted_dirs, pair_dirs):
    """Wedge accumulation: each pair of directions covers the open arcs inside
    its width-<pi closed wedge; counts collected by a cyclic diff sweep."""
    n = len(sorted_dirs)
    pos = {d: p for p, d in enumerate(sorted_dirs)}
    diff = [0] * (n + 1)

    def cover(lo, hi):
        if lo < hi:
            diff[lo] += 1
            diff[hi] -= 1
        else:
            diff[lo] += 1
            diff[n] -= 1
            diff[0] += 1
            diff[hi] -= 1

    for a, b in pair_dirs:
        if _icross(a, b) < 0:
            a, b = b, a
        cover(pos[a], pos[b])
    counts = []
    acc = 0
    for i in range(n):
        acc += diff[i]
        counts.append(acc)
    return counts


def exposure_profile(q: Point, family: LineFamily) -> ExposureProfile:
    """Crossing-count profile of q against every pair of lines in the family."""
    if q.dim != 2:
        raise DimensionError("exposure_profile is planar only")
    n = family.n
    if n < 2:
        raise DomainError("exposure needs at least 2 lines")
    dirs = _projection_directions(q, family.lines)
    sorted_dirs = _sorted_cyclic(dirs)
    pairs = list(itertools.combinations(dirs, 2))
    counts = _arc_counts(sorted_dirs, pairs)
    return ExposureProfile(directions=tuple(sorted_dirs),
                           arc_counts=tuple(counts),
                           pair_total=binom(n, 2))


@dataclass(frozen=True)
class DirectionArc:
    """Closed arc of directions from ``start`` counterclockwise to ``end``."""

    start: tuple
    end: tuple
    flag: str  # "EXPOSED" | "ALMOST_EXPOSED"

    def contains(self, direction) -> bool:
        p = _reduce_dir(tuple(direction))
        s, e = self.start, self.end
        if p == s or p == e:
            return True
        c = _icross(s, e)
        if c > 0:
            return _icross(s, p) >= 0 and _icross(p, e) >= 0
        if c < 0:
            return not (_icross(e, p) > 0 and _icross(p, s) > 0)
        if s == e:
            return p == s
        return _icross(s, p) > 0  # antipodal endpoints: ccw half-circle


@dataclass(frozen=True)
class DirectionArcSet:
    """Pairwise-disjoint (except endpoints) closed arcs on the direction circle."""

    arcs: tuple
    full_circle: bool = False

    @property
    def is_empty(self) -> bool:
        return not self.full_circle and not self.arcs

    def contains_direction(self, direction) -> bool:
        if self.full_circle:
            return True
        return any(arc.contains(direction) for arc in self.arcs)


def _mask_to_arcset(mask, directions, flag):
    n = len(mask)
    if not any(mask):
        return DirectionArcSet(arcs=(), full_circle=False)
    if all(mask):
        return DirectionArcSet(arcs=(), full_circle=True)
    arcs = []
    starts = [i for i in range(n) if mask[i] and not mask[(i - 1) % n]]
    for i in starts:
        j = i
        while mask[(j + 1) % n]:
            j += 1
        arcs.append(DirectionArc(start=directions[i % n],
                                 end=directions[(j + 1) % n],
                                 flag=flag))
    return DirectionArcSet(arcs=tuple(arcs), full_circle=False)


def exposed_arcs(q: Point, family: LineFamily) -> DirectionArcSet:
    """Arcs of ray directions crossed by fewer than 2/9 of projection pairs."""
    profile = exposure_profile(q, family)
    threshold = DUAL_BOUND * profile.pair_total
    mask = [c < threshold for c in profile.arc_counts]
    return _mask_to_arcset(mask, profile.directions, "EXPOSED")


def almost_exposed_arcs(q: Point, family: LineFamily) -> DirectionArcSet:
    """Exposed arcs extended by every direction whose ray lies in a region
    bounded by two exposed rays holding fewer than one third of the projections."""
    profile = exposure_profile(q, family)
    threshold = DUAL_BOUND * profile.pair_total
    n = profile.n_arcs
    mask = [c < threshold for c in profile.arc_counts]
    exposed_idx = [i for i in range(n) if mask[i]]
    almost = list(mask)
    third = Fraction(n, 3)
    for i in exposed_idx:
        for j in exposed_idx:
            inside = (j - i) % n  # projections strictly inside the ccw sector
            if inside < third:
                for t in range(inside + 1):
                    almost[(i + t) % n] = True
    return _mask_to_arcset(almost, profile.directions, "ALMOST_EXPOSED")


def _unexposed_at(candidate_h, coeffs, lines, full_pair_total):
    """Conservative unexposedness certificate at a candidate point.

    Lines through the candidate contribute no well-defined projection
    direction; their pairs are counted as never crossing, which only lowers
    counts and so can only under-certify. A certificate here still implies the
    2/9 depth consequence.
    """
    cx, cy, cw = candidate_h
    others = []
    for idx, (a, b, c) in enumerate(coeffs):
        if a * cx + b * cy != c * cw:
            others.append(idx)
    if len(others) < 2:
        return False
    q = dehomog(candidate_h)
    try:
        dirs = _projection_directions(q, [lines[j] for j in others])
        sorted_dirs = _sorted_cyclic(dirs)
    except DegeneracyError:
        return False  # cannot certify a degenerate direction configuration
    counts = _arc_counts(sorted_dirs, list(itertools.combinations(dirs, 2)))
    threshold = DUAL_BOUND * full_pair_total
    return all(c >= threshold for c in counts)


def find_unexposed_point(family: LineFamily):
    """First candidate (arrangement vertices in lexicographic order, then edge
    midpoints) with an empty exposed set; None when no candidate certifies."""
    from functools import cmp_to_key

    n = family.n
    violations = lines_general_position_report(family.lines)
    if violations:
        raise DegeneracyError("line family is not in general position", violations)
    coeffs = _coeffs(family)
    pair_total = binom(n, 2) if n >= 2 else 0
    verts = list(_arrangement_vertices(coeffs))
    verts.sort(key=cmp_to_key(_homog_lex_cmp))
    midpoints = []
    for i, (a, b, c) in enumerate(coeffs):
        on_line = []
        for key in verts:
            x, y, w = key
            if a * x + b * y == c * w:
                on_line.append(Fraction(-b * x + a * y, w))
        on_line.sort()
        den = a * a + b * b
        for s1, s2 in zip(on_line, on_line[1:]):
            mid = (s1 + s2) / 2
            # the line point whose signed parameter along (-b, a) equals mid
            px = Fraction(a * c, den) - b * mid / den
            py = Fraction(b * c, den) + a * mid / den
            midpoints.append(Point(px, py))
    mid_keys = sorted({reduce_homog(homog(p)) for p in midpoints},
                      key=cmp_to_key(_homog_lex_cmp))
    for key in verts + mid_keys:
        if _unexposed_at(key, coeffs, family.lines, pair_total):
            return dehomog(key)
    return None


# ---------------------------------------------------------------------------
# Tangent-line construction (tightness of the 2/9 constant)
# ---------------------------------------------------------------------------

def tangent_family(n: int, params=None) -> LineFamily:
    """Lines tangent to the unit circle at n rationally parameterized points of
    the quarter arc from (1, 0) to (0, 1).

    The tangency point for parameter t is ((1-t^2)/(1+t^2), 2t/(1+t^2)) and the
    tangent line is x*x0 + y*y0 = 1; every coefficient stays rational.
    """
    if n < 3:
        raise DomainError("tangent_family needs n >= 3")
    if params is None:
        params = [Fraction(k, n - 1) for k in range(n)]
    else:
        params = [scalar(t) for t in params]
    if len(params) != n:
        raise DomainError(f"expected {n} parameters, got {len(params)}")
    if len(set(params)) != n:
        raise DomainError("tangent parameters must be distinct")
    if any(t < 0 or t > 1 for t in params):
        raise DomainError("tangent parameters must lie in [0, 1]")
    if sorted(params) != params:
        raise DomainError("tangent parameters must be ascending")
    lines = []
    for t in params:
        den = 1 + t * t
        x0 = (1 - t * t) / den
        y0 = 2 * t / den
        lines.append(Hyperplane((x0, y0), 1))
    return LineFamily(tuple(lines), provenance=f"tangent:{n}")


@dataclass(frozen=True)
class TangentClassification:
    """Class sizes for a query point outside the circle: lines separating the
    point from the circle (n2) and same-side lines with tangency point
    clockwise (n1) or counterclockwise (n3) of the query direction."""

    n1: int
    n2: int
    n3: int

    @property
    def total(self) -> int:
        return self.n1 + self.n2 + self.n3

    @property
    def product(self) -> int:
        return self.n1 * self.n2 * self.n3


def classify_tangents(q: Point, family: LineFamily) -> TangentClassification:
    """Separate a tangent family into the three classes a surrounding triple
    must draw from; valid for q strictly outside the unit circle, off all lines."""
    if q.dim != 2:
        raise DimensionError("classify_tangents is planar only")
    if q.dot(q) <= 1:
        raise DegeneracyError("query point must be strictly outside the unit circle")
    origin = Point(0, 0)
    n1 = n2 = n3 = 0
    for h in family.lines:
        side_q = h.side(q)
        if side_q == 0:
            raise DegeneracyError("query point lies on a tangent line")
        if (side_q > 0) != (h.side(origin) > 0):
            n2 += 1
            continue
        t = project_onto_hyperplane(origin, h)
        cross = t.x * q.y - t.y * q.x
        if cross == 0:
            raise DegeneracyError("query point is radially aligned with a tangency point")
        if cross < 0:
            n1 += 1
        else:
            n3 += 1
    return TangentClassification(n1, n2, n3)


def _cell_representatives(coeffs):
    """One exact rational point strictly inside each arrangement cell adjacent
    to each vertex; covers every bounded cell, hence every cell where the
    strict surround count can be positive."""
    verts = _arrangement_vertices(coeffs)
    reps = []
    for key, (i, j) in verts.items():
        vx, vy, vw = key
        ui = (-coeffs[i][1], coeffs[i][0])
        uj = (-coeffs[j][1], coeffs[j][0])
        for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            w = (sx * ui[0] + sy * uj[0], sx * ui[1] + sy * uj[1])
            if w == (0, 0):
                continue
            nearest = None
            for a, b, c in coeffs:
                num = c * vw - a * vx - b * vy
                den = vw * (a * w[0] + b * w[1])
                if den == 0 or num == 0:
                    continue
                s = Fraction(num, den)
                if s > 0 and (nearest is None or s < nearest):
                    nearest = s
            t = nearest / 2 if nearest is not None else Fraction(1)
            reps.append(Point(Fraction(vx, vw) + t * w[0], Fraction(vy, vw) + t * w[1]))
    return reps


def _max_strict_dual(coeffs):
    """Max over generic points of the strict (open-cell) surround count."""
    triangles = _triple_triangles(coeffs)
    best_count = -1
    best_key = None
    for rep in _cell_representatives(coeffs):
        key = reduce_homog(homog(rep))
        c = 0
        for _, tri in triangles:
            if _closed_code_homog(key, tri) == 2:
                c += 1
        if best_key is None or _better(c, key, best_count, best_key):
            best_count, best_key = c, key
    return best_count, dehomog(best_key)


@dataclass(frozen=True)
class ExtremalReport:
    """Tightness summary for the tangent family of size n.

    ``max_count`` is the maximum STRICT surround count over generic points
    (the notion the n^3/27 product bound governs). The closed-count maximum
    over arrangement vertices is reported alongside: it sits on triple
    boundaries and may legitimately exceed the product bound, which is why it
    is flagged rather than bounded.
    """

    n: int
    max_count: int
    max_point: Point
    fraction: Fraction
    product_bound: Fraction
    product_bound_floor: int
    gromov_floor: Fraction
    distance_to_bound: Fraction
    closed_max_count: int
    closed_max_point: Point
    closed_boundary_count: int


def extremal_report(n: int) -> ExtremalReport:
    """Run the max searches on tangent_family(n) and compare against the
    product bound n^3/27 and the 2/9 floor."""
    family = tangent_family(n)
    coeffs = _coeffs(family)
    strict_max, strict_point = _max_strict_dual(coeffs)
    floor = n ** 3 // 27
    if strict_max > floor:
        raise InternalError(
            f"strict surround count {strict_max} exceeds the product bound {floor}")
    closed_point, closed_rep = max_dual_depth_point(family)
    total = binom(n, 3)
    fraction = Fraction(strict_max, total)
    return ExtremalReport(
        n=n,
        max_count=strict_max,
        max_point=strict_point,
        fraction=fraction,
        product_bound=Fraction(n ** 3, 27),
        product_bound_floor=floor,
        gromov_floor=DUAL_BOUND * total,
        distance_to_bound=abs(fraction - DUAL_BOUND),
        closed_max_count=closed_rep.count,
        closed_max_point=closed_point,
        closed_boundary_count=closed_rep.count - closed_rep.strict_count,
    )
