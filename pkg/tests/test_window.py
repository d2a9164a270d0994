import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import windows_1d
from syndetica.errors import OutOfWindowError, WindowError
from syndetica.window import Box, Window1D, Window2D, set_algebra


def test_from_predicate_examples():
    assert Window1D.from_predicate(0, 4, lambda n: n % 2 == 0).members().tolist() == [0, 2, 4]
    assert Window1D.from_predicate(-2, 2, lambda n: True) == Window1D.full(-2, 2)
    sq = Window1D.from_predicate(0, 10, lambda n: int(n ** 0.5) ** 2 == n)
    assert sq.members().tolist() == [0, 1, 4, 9]


def test_empty_interval_rejected():
    with pytest.raises(WindowError):
        Window1D.from_predicate(3, 2, lambda n: True)


def test_out_of_window_query_raises():
    w = Window1D.full(0, 4)
    assert 4 in w
    with pytest.raises(OutOfWindowError):
        5 in w
    with pytest.raises(IndexError):
        -1 in w


def test_set_algebra_examples():
    evens = Window1D.from_predicate(0, 4, lambda n: n % 2 == 0)
    assert set_algebra(evens, op="complement").members().tolist() == [1, 3]
    s = Window1D.from_members(0, 5, [0, 3])
    shifted = set_algebra(s, op="shift", k=1)
    assert shifted.interval == (1, 6) and shifted.members().tolist() == [1, 4]
    a = Window1D.from_predicate(0, 30, lambda n: n % 3 == 0)
    b = Window1D.from_predicate(0, 30, lambda n: n % 2 == 0)
    assert set_algebra(a, b, "intersect").members().tolist() == list(range(0, 31, 6))


def test_mismatched_windows_rejected():
    with pytest.raises(WindowError):
        Window1D.full(0, 4) | Window1D.full(0, 5)


def test_immutable():
    w = Window1D.full(0, 3)
    with pytest.raises(AttributeError):
        w.lo = 1
    with pytest.raises(ValueError):
        w.bits[0] = False


@given(windows_1d())
def test_double_complement(w):
    assert ~~w == w


@given(windows_1d(), st.data())
def test_de_morgan(a, data):
    bits = data.draw(st.lists(st.booleans(), min_size=a.span, max_size=a.span))
    b = Window1D(a.lo, a.hi, np.array(bits, dtype=bool))
    assert ~(a | b) == (~a & ~b)
    assert ~(a & b) == (~a | ~b)


@given(windows_1d(), st.integers(-40, 40))
def test_shift_round_trip(w, k):
    back = w.shift(k).shift(-k)
    assert back == w
    for n in w.members():
        assert (n + k) in w.shift(k)


@given(windows_1d())
def test_json_and_csv_round_trip(w):
    assert Window1D.from_json(json.loads(json.dumps(w.to_json()))) == w
    assert Window1D.from_csv(w.to_csv(), w.lo, w.hi) == w


def test_window2d_shape_and_membership():
    box = Box(-2, 3, 5, 7)
    w = Window2D.from_predicate(box, lambda m, n: (m + n) % 2 == 0)
    assert w.shape == (6, 3) and w.bits.size == 18
    assert (-2, 5) not in w and (-1, 5) in w
    with pytest.raises(OutOfWindowError):
        (4, 5) in w
    assert w.row(6) == Window1D.from_predicate(-2, 3, lambda m: (m + 6) % 2 == 0)


def test_window2d_serialization_round_trips(rng):
    box = Box(-3, 9, -4, 6)
    w = Window2D(box, rng.random(box.shape) < 0.4)
    assert Window2D.from_json(json.loads(json.dumps(w.to_json()))) == w
    assert Window2D.from_csv(w.to_csv(), box) == w
    assert Window2D.from_pbm(w.to_pbm(), box.mlo, box.nlo) == w


def test_pbm_is_binary_p4():
    w = Window2D.from_members(Box(0, 9, 0, 1), [(0, 0), (9, 1)])
    data = w.to_pbm()
    assert data.startswith(b"P4\n10 2\n")
    # 2 rows of 10 pixels pack into 2 bytes each
    assert len(data) == len(b"P4\n10 2\n") + 4
