from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from syndetica import oracles
from syndetica.errors import InconclusiveError, OutOfWindowError, WindowError
from syndetica.symdyn import (
    Cylinder, SeqWindow, Word, hitting_offsets, language, metric,
    multiple_recurrence_scan, occurrences)

bits = st.text(alphabet="01", min_size=1, max_size=80)


def one(text):
    return SeqWindow.from_str(text)


def test_word_basics():
    w = Word.from_str("10") + Word.zeros(3)
    assert str(w) == "10000" and len(w) == 5 and w[0] == 1
    assert str(Word.from_str("01") * 3) == "010101"


def test_shift_convention():
    s = SeqWindow(-2, [1, 0, 0, 1, 1], two_sided=True)
    t = s.shift(1)
    # (T x)_i = x_{i+1}
    assert all(t[i] == s[i + 1] for i in range(t.lo, t.hi))
    o = one("10110")
    assert o.shift(2) == one("110")
    with pytest.raises(WindowError):
        o.shift(-1)


def test_out_of_window_symbol_raises():
    with pytest.raises(OutOfWindowError):
        one("101")[3]


def test_occurrence_examples():
    assert occurrences(Word.from_str("101"), one("0101101")).members().tolist() == [1, 4]
    assert occurrences(Word.from_str("0"), one("0" * 10)).members().tolist() == list(range(10))
    assert occurrences(Word.from_str("11"), one("10" * 8)).is_empty()


def test_occurrences_match_oracle_on_random_pairs():
    rng = np.random.default_rng(11)
    for _ in range(500):
        s = "".join(rng.choice(["0", "1"], size=int(rng.integers(1, 60))))
        w = "".join(rng.choice(["0", "1"], size=int(rng.integers(1, 5))))
        if len(w) > len(s):
            continue
        got = set(occurrences(Word.from_str(w), one(s)).members().tolist())
        assert got == oracles.occurrences(w, s)


def test_cylinder():
    c = Cylinder(Word.from_str("11"), 2)
    assert c.contains(one("00110")) and not c.contains(one("01010"))


def test_metric_examples():
    x = SeqWindow.constant(0, 19, 0, two_sided=False)
    v = metric(x, x)
    assert not v.exact and v.value == Fraction(1, 21)
    assert metric(one("0110"), one("1110")) == metric(one("1"), one("0"))
    assert metric(one("1"), one("0")).value == 1 and metric(one("1"), one("0")).exact
    third = metric(one("1000"), one("1010"))
    assert third.exact and third.value == Fraction(1, 3) and third.first_difference == 2


def test_metric_two_sided_uses_absolute_index():
    x = SeqWindow(-5, [0] * 11, True)
    y = SeqWindow(-5, [0, 0, 1] + [0] * 8, True)
    v = metric(x, y)
    assert v.exact and v.value == Fraction(1, 4)


def test_metric_errors():
    with pytest.raises(WindowError):
        metric(one("0"), SeqWindow(0, [0], True))
    with pytest.raises(WindowError):
        metric(SeqWindow(0, [0], True), SeqWindow(5, [0], True))


@given(bits, bits)
def test_metric_symmetric_and_zero_on_diagonal(a, b):
    x, y = one(a), one(b)
    assert metric(x, y) == metric(y, x)
    self_dist = metric(x, x)
    assert not self_dist.exact and self_dist.value == Fraction(1, 1 + x.span)


@given(bits, bits, st.integers(0, 30))
def test_metric_agreement_radius(a, b, k):
    x, y = one(a), one(b)
    n = min(x.span, y.span)
    if k >= n:
        return
    agree = a[:k + 1] == b[:k + 1]
    v = metric(x, y)
    # rho < 1/(k+1) iff agreement on [0, k]
    assert (v.value < Fraction(1, k + 1)) == agree


def test_hitting_offset_examples():
    s = one("10" * 20)
    off = hitting_offsets(Word.from_str("1"), Word.from_str("1"), s)
    assert set(off.members().tolist()) == set(range(-38, 39, 2))
    whole = Word.from_str("10110")
    assert hitting_offsets(whole, whole, one("10110")).members().tolist() == [0]
    assert hitting_offsets(Word.from_str("1"), Word.from_str("0"), one("10")).members().tolist() == [1]


@given(st.text(alphabet="01", min_size=5, max_size=400), st.text(alphabet="01", min_size=1, max_size=3),
       st.text(alphabet="01", min_size=1, max_size=3))
def test_hitting_offsets_match_oracle(s, u, v):
    got = set(hitting_offsets(Word.from_str(u), Word.from_str(v), one(s)).members().tolist())
    assert got == oracles.hitting_offsets(u, v, s)
    if oracles.occurrences(u, s):
        assert 0 in set(hitting_offsets(Word.from_str(u), Word.from_str(u), one(s)).members().tolist())


def test_hitting_offsets_fft_path_matches_oracle():
    rng = np.random.default_rng(3)
    s = "".join(rng.choice(["0", "1"], size=3000))
    got = set(hitting_offsets(Word.from_str("1"), Word.from_str("01"), one(s)).members().tolist())
    assert got == oracles.hitting_offsets("1", "01", s)


@given(st.text(alphabet="01", min_size=10, max_size=60), st.integers(1, 4))
def test_hitting_offsets_monotone_in_window(s, cut):
    u, v = Word.from_str("1"), Word.from_str("0")
    small = set(hitting_offsets(u, v, one(s[:-cut])).members().tolist())
    assert small <= set(hitting_offsets(u, v, one(s)).members().tolist())


def test_language_examples():
    assert language(one("0" * 9), 3) == {Word.from_str("000")}
    assert language(one("0101"), 2) == {Word.from_str("01"), Word.from_str("10")}
    assert language(one("0110"), 4) == {Word.from_str("0110")}
    with pytest.raises(WindowError):
        language(one("01"), 0)


@given(st.text(alphabet="01", min_size=8, max_size=60), st.integers(1, 6))
def test_language_matches_oracle_and_grows(s, k):
    got = {str(w) for w in language(one(s), k)}
    assert got == oracles.language(s, k)
    assert len(language(one(s[:-1]), k)) <= len(got) if len(s) > k else True


def test_mrec_scan_examples():
    assert multiple_recurrence_scan(one("0" * 100), 0, 5, 40) == list(range(1, 41))
    assert multiple_recurrence_scan(one("10" * 60), 0, 1, 50) == list(range(2, 51, 2))


def test_mrec_scan_inconclusive_when_window_short():
    with pytest.raises(InconclusiveError):
        multiple_recurrence_scan(one("0" * 10), 0, 2, 10)


@given(st.text(alphabet="01", min_size=30, max_size=120), st.integers(0, 5), st.integers(0, 4))
def test_mrec_scan_matches_oracle(s, j, r):
    nmax = (len(s) - 1 - j - r) // 2
    if nmax < 1:
        return
    assert multiple_recurrence_scan(one(s), j, r, nmax) == oracles.mrec_scan(s, j, r, nmax)


def test_ascii_round_trip(tmp_path):
    s = SeqWindow(-7, [1, 0, 0, 1, 1, 0], two_sided=True)
    path = tmp_path / "x.txt"
    s.save(path)
    assert (tmp_path / "x.txt.json").exists()
    assert SeqWindow.load(path) == s
    assert SeqWindow.from_ascii(s.to_ascii(), s.sidecar()) == s
