from __future__ import annotations

import numpy as np
import pytest

from spinorkit.errors import NotPrime, TooExpensive
from spinorkit.ffenum import (
    PointStream,
    count_grassmann,
    count_sigma,
    enum_projective,
    enum_section_points,
    incidence_crosscheck,
    projective_size,
    split_range,
)
from spinorkit.field import GF
from spinorkit.sections import section_sample


def test_projective_line_over_f2():
    assert list(enum_projective(1, 2)) == [(0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("N,p", [(2, 3), (3, 2), (4, 5)])
def test_stream_enumerates_each_point_once(N, p):
    pts = list(enum_projective(N, p))
    assert len(pts) == projective_size(N, p) == (p ** (N + 1) - 1) // (p - 1)
    assert len(set(pts)) == len(pts)
    assert all(pt[next(i for i, c in enumerate(pt) if c)] == 1 for pt in pts)
    arr = PointStream(N, p).array(0, len(pts))
    assert [tuple(int(v) for v in row) for row in arr] == pts


def test_cursor_restart():
    s = enum_projective(3, 3)
    it = iter(s)
    head = [next(it) for _ in range(7)]
    s.cursor = 7
    resumed = PointStream.restore(s.serialize())
    assert resumed.cursor == 7
    assert head + list(resumed) == list(enum_projective(3, 3))


def test_split_range_covers_everything():
    parts = split_range(103, 4)
    assert parts[0][0] == 0 and parts[-1][1] == 103
    assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))


def test_not_prime():
    with pytest.raises(NotPrime):
        enum_projective(2, 4)
    with pytest.raises(NotPrime):
        count_sigma(9)


def test_sigma_count_p2():
    rep = count_sigma(2)
    assert rep.count == rep.formula == 2295 and rep.match
    assert rep.lines()[0] == "count=2295 formula=2295 match=true"


def test_grassmann_counts():
    assert count_grassmann(2).count == 155
    assert count_grassmann(3).count == 1210


def test_parallel_enumeration_matches_serial():
    serial = count_sigma(2, chunk=1 << 10)
    parallel = count_sigma(2, workers=2, chunk=1 << 10)
    assert serial.as_dict() == parallel.as_dict()


def test_budget_guard():
    with pytest.raises(TooExpensive):
        count_sigma(5)
    with pytest.raises(TooExpensive):
        count_grassmann(31)


def test_section_points_are_on_the_section():
    x = section_sample(-1, GF(7), 2)
    pts = enum_section_points(x)
    assert all(x.contains(list(pt.coords)) for pt in pts)
    assert enum_section_points(x, workers=2, chunk=1 << 12) == pts


def test_crosscheck_small():
    rep = incidence_crosscheck(5, 2000, seed=1, batch=500, spot_checks=5)
    assert rep.ok and rep.samples == 2000
    assert set(rep.opposite_dims) <= {0, 2, 4} and set(rep.same_dims) <= {1, 3, 5}
    assert rep.as_dict() == incidence_crosscheck(5, 2000, seed=1, batch=500, spot_checks=5).as_dict()


def test_stream_array_dtype():
    arr = PointStream(2, 3).array(0, 5)
    assert arr.shape == (5, 3) and np.issubdtype(arr.dtype, np.integer)
