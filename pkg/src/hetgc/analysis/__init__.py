"""Closed-form expected decoding errors, cycle-class combinatorics and their oracles."""

from .combinatorics import (
    CycleClass,
    cycle_class_count,
    divisors,
    enumerate_cycle_representatives,
    moebius,
    num_cycle_classes,
)
from .expected import (
    BreakdownRow,
    ErrorReport,
    conditional_error,
    crc_conditional_error,
    expected_err_cond,
    expected_err_crc_cond,
    expected_err_frc_cond,
    expected_err_total,
    frc_conditional_error,
    prob_nonstragglers,
    prob_slow_count,
    expected_unaccessed_per_partition,
    unaccessed_expectation,
)
from .oracles import brute_force_conditional_err, monte_carlo_err, simulate_unaccessed, subset_errors
