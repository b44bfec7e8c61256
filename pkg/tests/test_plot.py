import re

import numpy as np
import pytest

from dsrating.errors import IoError, NeedTwoDimensions
from dsrating.plot import build_biplot, build_individual_map, build_object_map, emit_svg, render_svg
from dsrating.variants import Variant, VariantConfig, estimate_mean_ratings, run_car, run_ds2, run_ds3


def count(svg, tag, cls=None):
    pattern = f"<{tag} class=\"{cls}\"" if cls else f"<{tag} "
    return svg.count(pattern)


def test_ds3_object_map(crimes7):
    spec = build_object_map(run_ds3(crimes7))
    assert len(spec.point_sets) == 1 and spec.point_sets[0].xy.shape == (7, 2)
    assert spec.axes == ()
    assert spec.point_sets[0].scaling == "standard"


def test_car_object_map(crimes7):
    res = run_car(crimes7)
    spec = build_object_map(res)
    assert spec.point_sets[0].scaling == "principal"
    assert spec.point_sets[0].xy.shape == (14, 2)
    assert len(spec.axes) == 7
    for axis in spec.axes:
        assert axis.ticks.shape == (4, 2)
        np.testing.assert_allclose(axis.ticks[0], axis.minus)
        np.testing.assert_allclose(axis.ticks[-1], axis.plus)
        steps = np.diff(axis.ticks, axis=0)
        np.testing.assert_allclose(steps, np.broadcast_to(steps[0], steps.shape), atol=1e-15)
    labels = spec.point_sets[0].labels
    assert sum(lab.endswith("+") for lab in labels) == 7 and sum(lab.endswith("-") for lab in labels) == 7
    svg = render_svg(spec)
    assert count(svg, "polyline", "axis") == 7
    assert count(svg, "line", "tick") == 28
    assert count(svg, "circle") == 14


def _perp_distance(point, a, b):
    d = b - a
    w = point - a
    return abs(d[0] * w[1] - d[1] * w[0]) / np.linalg.norm(d)


@pytest.mark.parametrize("name", ["toy", "crimes7"])
def test_origin_on_axes_and_mean_markers(name, request):
    res = run_car(request.getfixturevalue(name))
    spec = build_object_map(res)
    means = estimate_mean_ratings(res)
    q = res.data.q
    for axis, mean in zip(spec.axes, means):
        assert _perp_distance(np.zeros(2), axis.minus, axis.plus) < 1e-8
        np.testing.assert_allclose(axis.mean_point, 0, atol=1e-10)
        assert abs(1 + (q - 1) * axis.mean_t - mean) < 1e-10
        assert abs(axis.mean_rating - mean) < 1e-10


def test_individual_maps(crimes7):
    ds3 = build_individual_map(run_ds3(crimes7))
    assert ds3.point_sets[0].xy.shape == (17, 2) and ds3.point_sets[0].scaling == "principal"
    car = build_individual_map(run_car(crimes7))
    assert car.point_sets[0].xy.shape == (17, 2) and car.point_sets[0].scaling == "standard"


def test_individual_map_follows_permutation(crimes7):
    perm = np.arange(crimes7.n)[::-1]
    a = build_individual_map(run_car(crimes7)).point_sets[0]
    b = build_individual_map(run_car(crimes7.select(rows=perm))).point_sets[0]
    assert b.labels == tuple(a.labels[i] for i in perm)


def test_biplots(crimes7):
    ds3 = build_biplot(run_ds3(crimes7))
    obj, ind = ds3.point_sets
    assert (obj.scaling, ind.scaling) == ("standard", "principal")
    assert obj.xy.shape == (7, 2) and ind.xy.shape == (17, 2)
    car = build_biplot(run_car(crimes7))
    obj, ind = car.point_sets
    assert obj.xy.shape == (14, 2) and ind.xy.shape == (17, 2)
    for ps in ds3.point_sets + car.point_sets:
        assert np.all(np.isfinite(ps.xy))


def test_ds2_object_map_includes_boundaries(crimes7):
    spec = build_object_map(run_ds2(crimes7))
    assert spec.point_sets[0].xy.shape == (10, 2)


def test_needs_two_dimensions(toy):
    res = run_ds3(toy, VariantConfig(Variant.DS3, k=1))
    for builder in (build_object_map, build_individual_map, build_biplot):
        with pytest.raises(NeedTwoDimensions):
            builder(res)


def test_svg_determinism_and_counts(tmp_path, crimes7):
    spec = build_object_map(run_ds3(crimes7))
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    emit_svg(spec, a)
    emit_svg(spec, b)
    assert a.read_bytes() == b.read_bytes()
    assert count(a.read_text(), "circle") == 7


def test_svg_equal_aspect(crimes7):
    spec = build_object_map(run_car(crimes7))
    svg = render_svg(spec)
    pts = np.array([[float(x), float(y)] for x, y in
                    re.findall(r'<circle class="objects" cx="([-\d.]+)" cy="([-\d.]+)"', svg)])
    data = spec.point_sets[0].xy
    # pixel offsets from point 0 are a single scalar multiple of the data offsets (y flipped)
    dp = pts[1:] - pts[0]
    dd = (data[1:] - data[0]) * [1, -1]
    ratios = np.concatenate([dp[:, 0] / dd[:, 0], dp[:, 1] / dd[:, 1]])
    np.testing.assert_allclose(ratios, ratios[0], rtol=1e-4)


def test_svg_unwritable(tmp_path, toy):
    with pytest.raises(IoError):
        emit_svg(build_biplot(run_car(toy)), tmp_path / "no" / "such" / "dir.svg")
