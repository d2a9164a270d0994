import numpy as np
import pytest

from syndetica.constructions import (
    bebutov, build_hierarchy, default_b_rule, hierarchy_prefix, hierarchy_sequence,
    squares_indicator)
from syndetica.errors import OutOfWindowError, WindowError
from syndetica.largeness import syndetic_gap
from syndetica.polyret import TSGenerator, ts_generate
from syndetica.symdyn import Word, language, occurrences
from syndetica.window import Window1D


def test_bebutov_examples():
    assert set(bebutov(Window1D.full(-3, 3)).symbols.tolist()) == {0}
    assert set(bebutov(Window1D.empty(-3, 3)).symbols.tolist()) == {1}
    evens = Window1D.from_predicate(-4, 4, lambda n: n % 2 == 0)
    x = bebutov(evens)
    assert x.lo == -4 and x.symbols.tolist() == [0, 1, 0, 1, 0, 1, 0, 1, 0]


def test_squares_indicator_examples():
    x = squares_indicator(0, 10)
    assert [n for n in range(11) if x[n]] == [0, 1, 4, 9]
    neg = squares_indicator(-50, -1)
    assert not neg.symbols.any()


def test_squares_local_pattern():
    x = squares_indicator(0, 301 ** 2)
    for k in range(2, 301):
        expect = [0] * (2 * k - 2) + [1] + [0] * (2 * k)
        assert x.block(k * k - (2 * k - 2), 4 * k - 1).tolist() == expect


def test_hierarchy_small_cases():
    h1 = build_hierarchy(1)
    assert str(h1.word(1)) == "1"
    h2 = build_hierarchy(2)
    assert h2.b[0] == 16
    assert str(h2.word(2)) == "1" + "0" * 16 + "101" and h2.lengths[2] == 20


def test_hierarchy_length_recurrence():
    h = build_hierarchy(7)
    for n in range(1, 7):
        a_n, a_next, b_n = h.lengths[n], h.lengths[n + 1], h.b[n - 1]
        assert a_next == 3 * a_n + b_n + n
        assert len(h.word(n + 1)) == a_next
        assert b_n > 15 * h.lengths[n - 1]
    assert list(h.b) == [16, 16, 301, 1171, 8071, 41836]


def test_hierarchy_prefix_coherence():
    h = build_hierarchy(6)
    for n in range(1, 6):
        assert np.array_equal(h.words[n][: h.lengths[n]], h.words[n - 1])


def test_hierarchy_prefix_examples():
    h = build_hierarchy(4)
    assert hierarchy_prefix(h, 20).symbols.tobytes() == h.word(2).symbols
    assert hierarchy_prefix(h, 1).to_ascii() == "1"
    a3 = h.word(3)
    expect = h.word(2) + Word.zeros(h.b[1]) + h.word(2)
    assert a3[: len(expect)] == expect
    with pytest.raises(OutOfWindowError):
        hierarchy_prefix(h, h.lengths[4] + 1)


def test_bad_b_rule_rejected_naming_n():
    with pytest.raises(WindowError, match="b_2"):
        build_hierarchy(4, lambda n, a: 16 if n == 1 else 15 * a[n - 1])


def test_custom_b_rule_accepted():
    h = build_hierarchy(4, lambda n, a: 2 * default_b_rule(n, a))
    assert h.b[0] == 32


def test_hierarchy_gap_lengths_present_at_depth():
    # A_2 0^m A_2 occurs for the separators n (< depth) and the b-values
    h = build_hierarchy(7)
    x = hierarchy_sequence(h)
    A2 = h.word(2)
    for m in (2, 3, 4, 5, 6, 16):
        assert occurrences(A2 + Word.zeros(m) + A2, x).count() > 0


def test_zero_words_syndetic_in_bebutov_of_ts_set():
    S = ts_generate(TSGenerator(6, (3, 5, 7, 9, 11, 13)), -2000, 2000)
    x = bebutov(S)
    for k in range(1, 7):
        assert Word.zeros(k) in language(x, k)
    assert syndetic_gap(occurrences(Word.zeros(6), x)) is not None
