"""Acceptance criteria, each run at its stated scale and time limit."""

import time

import pytest

from fsbench.fssets import brute_force_partition_check, partition_meta_search, pentagon_colouring
from fsbench.suites import (
    axioms_suite,
    condensation_suite,
    embedding_suite,
    fssets_suite,
    multicube_suite,
    supports_suite,
    witness_f_suite,
)


def failures(report):
    return sum(c.failure_count for c in report.checks)


def test_criterion_1_support_algebra(criterion):
    report = supports_suite(instances=10_000, max_terms=6)
    chain = report.check("tails ⊆ supp(sum) ⊆ root ∪ tails")
    ok = report.passed and chain.cases == 10_000 and report.seconds < 5
    criterion(1, ok, f"support chain on {chain.cases} instances, {failures(report)} failures", report.seconds)
    assert ok


def test_criterion_2_condensation(criterion):
    report = condensation_suite(instances=100, max_terms=4)
    sizes = report.checks[0].detail["sizes"]
    ok = report.passed and report.checks[0].cases == 100 and 8 <= sizes[0] and sizes[1] <= 64 and report.seconds < 30
    criterion(2, ok, f"100 condensations, input sizes {sizes[0]}..{sizes[1]}, {failures(report)} violations", report.seconds)
    assert ok


def test_criterion_3_witness_f(criterion):
    report = witness_f_suite(limit=10**5, r=3, m_max=8, n_max=8, width=8)
    fair = report.checks[1]
    ok = report.passed and report.checks[0].cases == 10**5 and fair.detail["fewest_fulfillments"] >= 3 and report.seconds < 60
    summary = f"f(k) ⊆ k below 10^5; {fair.cases} requirements, fewest fulfillments {fair.detail['fewest_fulfillments']} below K={fair.detail['K']}"
    criterion(3, ok, summary, report.seconds)
    assert ok


def test_criterion_4_multicube_replay(criterion):
    report = multicube_suite(ab=(1, 2), m_max=4, n_max=3, a_sizes=(4, 5, 6), max_p=4)
    replay = report.checks[0]
    ok = report.passed and report.seconds < 60
    criterion(4, ok, f"{replay.cases} replay cases, {replay.failure_count} failures", report.seconds)
    assert ok


def test_criterion_5_sandwich_checks(criterion):
    report = axioms_suite(instances=50, max_shared=10)
    pr1 = report.check("split pair colouring: every sandwich set has colour δ")
    osc = report.check("oscillation colouring: every sandwich set has colour δ")
    ok = report.passed and pr1.cases >= 50 and osc.cases >= 50 and pr1.detail["largest_free_part"] <= 10
    summary = f"{pr1.cases} pr1 and {osc.cases} osc instances, {pr1.detail['sandwich_sets']} pr1 sandwich sets, {failures(report)} failures"
    criterion(5, ok, summary, report.seconds)
    assert ok


def test_criterion_6_embedding(criterion):
    report = embedding_suite(instances=50, max_table=12, word_length=4)
    table = report.check("Cayley-table embeddings are injective homomorphisms")
    ok = report.passed and table.cases == 12
    criterion(6, ok, f"50 presentations and Z_1..Z_12, {failures(report)} failures", report.seconds)
    assert ok


def test_criterion_7_transfer(criterion):
    report = fssets_suite(instances=100)
    transfer, extend = report.checks[0], report.checks[1]
    ok = transfer.passed and extend.passed and extend.cases == 100 and transfer.detail["fs2_witnesses"] > 0
    summary = f"{transfer.detail['fs2_witnesses']} FS_2 witnesses transferred, {extend.cases} sumset extensions, {transfer.failure_count + extend.failure_count} failures"
    criterion(7, ok, summary, report.seconds)
    assert ok


@pytest.mark.slow
def test_criterion_8_partition_brute_force(criterion):
    start = time.perf_counter()
    pentagon = brute_force_partition_check(5, 3, 2, 2, pentagon_colouring).holds
    passing = partition_meta_search(6, 3, 2, 2)
    seconds = time.perf_counter() - start
    ok = pentagon and passing == [] and seconds < 120
    criterion(8, ok, f"pentagon passes (5,3,2,2): {pentagon}; colourings passing (6,3,2,2): {len(passing)}", seconds)
    assert ok
