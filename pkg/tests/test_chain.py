"""Normalizer chain runs against frozen small-rank data.

The rank-6 run is checked row by row: every size, every index, every
dimension vector. Those numbers were produced by this engine, confirmed
against the permutation oracle at the terms where that is feasible, and
then frozen here; any regression in the step logic moves at least one
of them.
"""

import json

import pytest

from rigidcomm import (
    ChainReport,
    RigidCommutator,
    full_rigid_set,
    run_chain,
    translation_normalizer_set,
    translation_set,
    verify_theoretical,
)

# rank 6: 21 growth steps then the fixpoint, log2 sizes and index jumps
N6_LOG2_SIZES = [
    21, 22, 24, 28, 35, 37, 41, 45, 46, 47, 49,
    51, 53, 55, 56, 57, 58, 59, 60, 61, 62, 63,
]
N6_INDICES = [15, 1, 2, 4, 7, 2, 4, 4, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1]


def test_translation_sets():
    t = translation_set(4)
    assert {c.elements for c in t} == {(1,), (2, 1), (3, 2, 1), (4, 3, 2, 1)}
    assert t.log2_order == 4
    u = translation_normalizer_set(4)
    assert t.issubset(u)
    assert u.log2_order == 4 * 5 // 2
    for n in (1, 2, 3, 6, 9):
        assert translation_normalizer_set(n).log2_order == n * (n + 1) // 2


def test_rank6_chain_full_table():
    report = run_chain(6)
    assert report.n == 6
    assert report.reached_full
    assert report.terminated_at == 21
    assert len(report.steps) == 22
    assert [s.log2_order for s in report.steps] == N6_LOG2_SIZES
    assert [s.index_log2 for s in report.steps] == N6_INDICES
    # dimension vectors: start and end are pinned, the rest must be
    # consistent partial sums
    assert report.steps[0].level_dims == (1, 2, 3, 4, 5, 6)
    assert report.steps[-1].level_dims == (1, 2, 4, 8, 16, 32)
    for s in report.steps:
        assert sum(s.level_dims) == s.log2_order
        assert len(s.new_members) == s.index_log2 if s.i > 0 else True


def test_rank6_first_new_members():
    report = run_chain(6)
    step1 = report.steps[1]
    assert [c.elements for c in step1.new_members] == [(6, 5, 4, 3)]
    step2 = report.steps[2]
    assert sorted(c.elements for c in step2.new_members) == [
        (5, 4, 3), (6, 5, 4, 2),
    ]


def test_step_zero_baseline_index():
    for n in (3, 4, 5, 6, 7):
        report = run_chain(n, 0)
        base = report.steps[0]
        assert base.i == 0
        assert base.log2_order == n * (n + 1) // 2
        assert base.index_log2 == n * (n - 1) // 2
        assert len(base.new_members) == base.index_log2


def test_trivial_ranks_terminate_immediately():
    for n in (1, 2):
        report = run_chain(n)
        assert report.reached_full
        assert report.terminated_at == 0
        assert report.steps[0].log2_order == (1 << n) - 1


def test_rank3_chain():
    report = run_chain(3)
    assert [s.log2_order for s in report.steps] == [6, 7]
    assert [s.index_log2 for s in report.steps] == [3, 1]
    assert report.terminated_at == 1
    assert report.member_masks_at(1) == full_rigid_set(3).masks


def test_member_masks_reconstruction():
    report = run_chain(5)
    for i in range(report.terminated_at + 1):
        masks = report.member_masks_at(i)
        assert len(masks) == report.steps[i].log2_order
    assert report.member_masks_at(report.terminated_at) == full_rigid_set(5).masks
    with pytest.raises(ValueError):
        report.member_masks_at(report.terminated_at + 1)


def test_budget_stops_early():
    report = run_chain(6, 3)
    assert not report.reached_full
    assert report.terminated_at == 3
    assert len(report.steps) == 4
    assert [s.log2_order for s in report.steps] == N6_LOG2_SIZES[:4]


def test_index_sequence_padding():
    report = run_chain(4)
    assert report.index_sequence(3) == (1, 2, 1)
    assert report.index_sequence(6) == (1, 2, 1, 1, 0, 0)
    truncated = run_chain(6, 2)
    with pytest.raises(ValueError):
        truncated.index_sequence(5)
    assert truncated.index_sequence(2) == (1, 2)


def test_past_termination_rows_are_fixpoints():
    full_at = run_chain(4).terminated_at
    report = run_chain(4, full_at + 3, stop_at_full=False)
    tail = report.steps[full_at + 1 :]
    assert len(tail) == 3
    assert all(s.index_log2 == 0 and not s.new_members for s in tail)
    assert all(s.log2_order == (1 << 4) - 1 for s in tail)


def test_chain_indices_match_partial_sum_predictions():
    # interior indices grow by the partial sums of the partition counts
    from rigidcomm import euler_table

    table = euler_table(16)
    for n in (4, 5, 6, 7, 8):
        report = run_chain(n)
        for i in range(1, n - 1):
            assert report.steps[i].index_log2 == table.a[i + 2], (n, i)


def test_verify_theoretical_all_hold():
    for n in (3, 4, 5, 6, 7):
        report = run_chain(n)
        verdicts = verify_theoretical(report)
        assert len(verdicts) == n - 1
        assert all(ok for _, ok in verdicts)


def test_parallel_chain_matches_serial():
    assert run_chain(6, 4, jobs=2).to_json_dict() == run_chain(6, 4).to_json_dict()


def test_report_json_shape():
    report = run_chain(3)
    d = report.to_json_dict()
    assert d["n"] == 3
    assert d["reached_full"] is True
    assert d["terminated_at"] == 1
    assert [s["i"] for s in d["steps"]] == [0, 1]
    assert "seconds" not in d["steps"][0]
    assert d["steps"][1]["new_members"] == [[3]]
    # byte-for-byte deterministic
    assert report.to_json() == run_chain(3).to_json()
    assert json.loads(report.to_json()) == d


def test_report_rejects_bad_budget():
    with pytest.raises(ValueError):
        run_chain(0)
    with pytest.raises(ValueError):
        run_chain(4, -1)
