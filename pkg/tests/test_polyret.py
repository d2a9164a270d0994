import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import windows_1d
from syndetica import oracles
from syndetica.errors import CoverageError, WindowError
from syndetica.largeness import run_starts, thickly_syndetic_profile
from syndetica.poly import PolyFamily
from syndetica.polyret import (
    TSGenerator, required_window, return_set, theorem_b_harness, ts_generate)
from syndetica.window import Box, Window1D, Window2D


def test_generator_examples():
    evens = ts_generate(TSGenerator(1, (2,)), -10, 10)
    assert evens == Window1D.from_predicate(-10, 10, lambda n: n % 2 == 0)
    S = ts_generate(TSGenerator(2, (4, 16)), -500, 500)
    starts = run_starts(S, 2)
    assert all(n in starts for n in range(-496, 496, 16))
    S3 = ts_generate(TSGenerator(3), -10 ** 4, 10 ** 4)
    assert thickly_syndetic_profile(S3, 3).finite()


@pytest.mark.parametrize("periods", [(4, 4), (8, 4), (0, 16)])
def test_generator_rejects_bad_schedules(periods):
    with pytest.raises(WindowError):
        TSGenerator(2, periods)


def test_default_schedule_is_powers_of_four():
    assert TSGenerator().periods == (4, 16, 64, 256)


def test_return_set_examples():
    A = PolyFamily.parse("n")
    box = Box(-5, 5, -3, 3)
    full = return_set(Window1D.full(*required_window(A, box)), A, box)
    assert full == Window2D.full(box)
    evens = Window1D.from_predicate(*required_window(A, box), lambda n: n % 2 == 0)
    R = return_set(evens, A, box)
    assert R == Window2D.from_predicate(box, lambda m, n: (m + n) % 2 == 0)


def test_return_set_matches_double_loop():
    A = PolyFamily.parse("n,n^2")
    box = Box(-2000, 2000, -40, 40)
    S = ts_generate(TSGenerator(), *required_window(A, box))
    R = return_set(S, A, box)
    assert {tuple(c) for c in R.members().tolist()} == oracles.return_set(S, A.polys, box)


def test_coverage_violation_lists_offenders():
    A = PolyFamily.parse("n,n^2")
    box = Box(0, 10, -3, 3)
    S = Window1D.full(-3, 12)
    with pytest.raises(CoverageError) as info:
        return_set(S, A, box)
    assert (3, 1) in info.value.offending and (-3, 1) in info.value.offending
    # m + n stays inside [-3, 12] except at n = 3
    assert [o for o in info.value.offending if o[1] == 0] == [(3, 0)]


@given(windows_1d(max_span=300, lo_range=(-100, 0)), st.integers(0, 40), st.integers(1, 5))
def test_shear_identity(S, width, height):
    A = PolyFamily.parse("n")
    box = Box(S.lo + height, min(S.lo + height + width, S.hi - height), -height, height)
    if box.mlo > box.mhi:
        return
    R = return_set(S, A, box)
    for m, n in [(m, n) for m in range(box.mlo, box.mhi + 1) for n in range(box.nlo, box.nhi + 1)]:
        assert ((m, n) in R) == ((m + n) in S)


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(["n", "n^2", "n,2n", "2n^2-n,n^3"]))
def test_monotone_in_s(seed, polys):
    A = PolyFamily.parse(polys)
    box = Box(-30, 30, -4, 4)
    lo, hi = required_window(A, box)
    rng = np.random.default_rng(seed)
    S = Window1D(lo, hi, rng.random(hi - lo + 1) < 0.5)
    bigger = S | Window1D(lo, hi, rng.random(hi - lo + 1) < 0.3)
    assert return_set(S, A, box) <= return_set(bigger, A, box)


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(["n", "n^2", "3n-n^2", "-n^3"]))
def test_rows_are_shifted_copies(seed, poly):
    A = PolyFamily.parse(poly)
    box = Box(-20, 20, -5, 5)
    lo, hi = required_window(A, box)
    S = Window1D(lo, hi, np.random.default_rng(seed).random(hi - lo + 1) < 0.5)
    R = return_set(S, A, box)
    p = A.polys[0]
    for n in range(box.nlo, box.nhi + 1):
        expect = S.shift(-p(n)).restrict(box.mlo, box.mhi)
        assert R.row(n) == expect


def test_harness_examples():
    rep = theorem_b_harness(TSGenerator(), PolyFamily.parse("n"), (-3000, 3000, -20, 20), (3, 3))
    assert rep.verdict == "PASS"
    full = theorem_b_harness(TSGenerator(), PolyFamily.parse("n,2n"), (-100, 100, -5, 5), (2, 2),
                             S=Window1D.full(-110, 110))
    assert set(full.gaps.values()) == {1}
    sq = theorem_b_harness(TSGenerator(), PolyFamily.parse("n^2"), (-5000, 5000, -70, 70), (2, 2))
    assert sq.verdict == "PASS"


def test_harness_inconclusive_for_tiny_box():
    rep = theorem_b_harness(TSGenerator(), PolyFamily.parse("n"), (0, 1, 0, 1), (3, 3))
    assert rep.verdict == "INCONCLUSIVE"


def test_harness_report_shape():
    rep = theorem_b_harness(TSGenerator(3), PolyFamily.parse("n"), (-500, 500, -5, 5), (2, 2))
    obj = rep.to_json()
    assert {"polys", "schedule", "gaps"} <= set(obj)
    assert set(obj["gaps"]) == {"1x1", "1x2", "2x1", "2x2"}
