import pytest

from fatflats.verifier import (
    analytic_branch_check,
    nosymetry_bounds,
    nosymetry_enumerate,
    replay_appendix,
    replay_ids,
    two_line_overlap_factored,
    two_line_overlap_value,
)


def test_two_line_overlap_examples():
    # direct evaluation is authoritative; the factored display carries an
    # extra factor 6 (it expands 6 times the binomial expression)
    assert two_line_overlap_value(2, 2, 1) == -4
    assert two_line_overlap_factored(2, 2, 1) == -24
    assert two_line_overlap_value(1, 1, 0) == 0
    for m in range(1, 7):
        assert two_line_overlap_value(m, m, 0) == 0


def test_two_line_overlap_domain():
    with pytest.raises(ValueError):
        two_line_overlap_value(2, 1, 0)
    with pytest.raises(ValueError):
        two_line_overlap_value(2, 2, 2)


def test_two_line_overlap_exhaustive_nonpositive():
    for m1 in range(1, 11):
        for m2 in range(m1, 11):
            for t in range(m1):
                value = two_line_overlap_value(m1, m2, t)
                assert value <= 0
                assert two_line_overlap_factored(m1, m2, t) == 6 * value


def test_bound_table_values():
    table = {
        7: (4.2035, 14.5043, 24.1538),
        8: (4.5236, 4.51017, 7.97625),
        9: (4.82374, 2.20558, 4.11512),
        10: (5.10725, 1.18148, 2.31334),
        11: (5.37664, 0.602377, 1.23239),
        12: (5.63383, 0.229665, 0.489184),
    }
    for s, (g_ref, d_ref, sum_ref) in table.items():
        g, d_bound, sum_bound = nosymetry_bounds(s)
        assert abs(float(g.midpoint) - g_ref) < 1e-3
        assert abs(float(d_bound) - d_ref) < 1e-3
        assert abs(float(sum_bound) - sum_ref) < 1e-3


def test_bounds_reject_out_of_range():
    with pytest.raises(ValueError):
        nosymetry_bounds(6)
    with pytest.raises(ValueError):
        nosymetry_bounds(13)


def test_enumeration_counts_match():
    rep9 = nosymetry_enumerate(9)
    assert dict(rep9.case_counts)[2] == 3
    assert not rep9.violations

    rep8 = nosymetry_enumerate(8)
    counts = dict(rep8.case_counts)
    assert counts[2] == 14 and counts[3] == 15
    assert counts.get(4, 0) == 0
    assert not rep8.violations


def test_enumeration_s7_sequences():
    rep = nosymetry_enumerate(7)
    assert rep.cases_checked == 4149
    assert rep.d_cap == 14 and rep.sum_cap == 24
    assert not rep.violations


def test_enumeration_immediate_cases():
    for s in (10, 11, 12):
        rep = nosymetry_enumerate(s)
        assert not rep.violations
        assert all(d < 2 for d, _ in rep.case_counts)


def test_enumeration_thread_determinism():
    solo = nosymetry_enumerate(8, threads=1)
    multi = nosymetry_enumerate(8, threads=3)
    assert solo.to_json() == multi.to_json()


def test_analytic_branch():
    assert all(analytic_branch_check(s) for s in range(13, 41))
    assert analytic_branch_check(11)


def test_replay_registry():
    assert "e-3-0-4" in replay_ids()
    for rid in replay_ids():
        report = replay_appendix(rid)
        assert report.passed, [a for a in report.assertions if not a.passed]
    with pytest.raises(KeyError):
        replay_appendix("nope")


def test_replay_expected_values():
    rep = replay_appendix("e-3-0-4")
    assert rep.assertions[0].expected == "3/2"
    rep = replay_appendix("e-3-1-6")
    assert rep.assertions[0].expected == "27/7"
