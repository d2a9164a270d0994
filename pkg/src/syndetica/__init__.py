"""Finite-window experiments on syndetic-type sets, polynomial return sets
and the symbolic systems built from them."""

from .constructions import (
    BlockHierarchy, bebutov, build_hierarchy, delta_indicator, hierarchy_prefix,
    hierarchy_sequence, squares_indicator, squares_window)
from .errors import (
    ArithmeticOverflowError, CoverageError, InconclusiveError, OutOfWindowError,
    PolynomialError, SyndeticaError, WindowError)
from .induced import (
    GroupElement, TruncPoint, act, convergence_probe, diagonal, hitting_set, in_u_tilde,
    linear_case_check, minimal_probe, omega, tau_inf, theorem_b_bridge)
from .largeness import (
    LargenessProfile1D, LargenessProfile2D, block_starts_2d, check_ps_witness,
    piecewise_syndetic_witness, run_starts, syndetic2d_gap, syndetic_gap,
    syndetic_profile, thickly_syndetic_profile, thickly_syndetic_profile_2d)
from .poly import IntPoly, PolyFamily, parse_poly
from .polyret import TSGenerator, required_window, return_set, theorem_b_harness, ts_generate
from .symdyn import (
    Cylinder, MetricValue, SeqWindow, Word, hitting_offsets, language, metric,
    multiple_recurrence_scan, occurrences)
from .window import Box, Window1D, Window2D, set_algebra

__version__ = "0.1.0"
