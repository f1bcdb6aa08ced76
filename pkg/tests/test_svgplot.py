import pytest

from heavycover.errors import UnsupportedError
from heavycover.exactgeom import Point
from heavycover.svgplot import bounding_box, depth_grid, emit_svg, emit_timeline_svg


def triangle_report():
    pts = [Point(0, 0), Point(4, 0), Point(0, 4)]
    bbox = bounding_box(pts)
    return {
        "bbox": [str(v) for v in bbox],
        "points": [[str(p.x), str(p.y)] for p in pts],
        "argmax": ["1", "1"],
        "title": "triangle",
    }


def test_emit_svg_markers():
    svg = emit_svg(triangle_report()).decode()
    assert svg.count('class="data"') == 3
    assert svg.count('class="argmax"') == 1
    assert svg.startswith("<svg")


def test_emit_svg_deterministic():
    assert emit_svg(triangle_report()) == emit_svg(triangle_report())


def test_emit_svg_rejects_non_planar():
    with pytest.raises(UnsupportedError):
        emit_svg({"dimension": 3, "bbox": ["0", "0", "1", "1"]})
    with pytest.raises(UnsupportedError):
        emit_svg({"points": [["0", "0"]]})


def test_depth_grid_counts_are_exact():
    pts = (Point(0, 0), Point(4, 0), Point(0, 4))
    from heavycover.selection import closed_depth_count

    grid = depth_grid(lambda x, y: closed_depth_count(Point(x, y), pts),
                      [0, 0, 4, 4], 8)
    assert grid["max"] == 1
    assert grid["cells"][0][0] == 1  # near the right-angle corner
    assert grid["cells"][7][7] == 0  # far corner, outside the triangle


def test_grid_renders_heat_cells():
    pts = (Point(0, 0), Point(4, 0), Point(0, 4))
    from heavycover.selection import closed_depth_count

    report = triangle_report()
    report["grid"] = depth_grid(lambda x, y: closed_depth_count(Point(x, y), pts),
                                [0, 0, 4, 4], 6)
    svg = emit_svg(report).decode()
    assert svg.count("<rect") > 5  # background plus heat cells


def test_timeline_svg():
    samples = [
        {"degenerate": False, "jump": False, "count": 3},
        {"degenerate": True, "jump": False, "count": None},
        {"degenerate": False, "jump": True, "count": 5},
    ]
    svg = emit_timeline_svg(samples).decode()
    assert svg.count("<rect") == 3
    assert "#d62728" in svg and "#bbbbbb" in svg
    assert emit_timeline_svg(samples) == emit_timeline_svg(samples)
