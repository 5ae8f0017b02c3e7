import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsbench.deltasystems import (
    HeadTailTailError,
    SetFamily,
    condense,
    delta_refine,
    delta_search,
    head_tail_tail_refine,
    is_delta_system,
    verify_sum_support,
)
from fsbench.groups import QQ, DirectSumElement, GroupSignature, Prufer, element_order
from fsbench.ordinals import EMPTY, FiniteOrdinalSet, is_head_tail_tail


def fam(*sets):
    return SetFamily(FiniteOrdinalSet(s) for s in sets)


def brute_delta(members):
    """Size of the largest Delta-subsystem with at least two members, by subset enumeration."""
    members = [frozenset(m) for m in members]
    best = 0
    n = len(members)
    for mask in range(1, 1 << n):
        chosen = [members[i] for i in range(n) if mask >> i & 1]
        if len(chosen) < 2 or len(chosen) <= best:
            continue
        root = chosen[0] & chosen[1]
        if all(a & b == root for a, b in itertools.combinations(chosen, 2)):
            best = len(chosen)
    return best


# delta_refine


def test_delta_refine_examples():
    sub, cert = delta_refine(fam({1, 2}, {1, 3}, {1, 4}, {2, 3}), 3)
    assert sub == fam({1, 2}, {1, 3}, {1, 4})
    assert cert.root == FiniteOrdinalSet([1])
    disjoint = fam({1}, {2, 3}, {4, 5, 6})
    sub, cert = delta_refine(disjoint, 3)
    assert sub == disjoint and cert.root == EMPTY
    assert delta_refine(fam({1, 2}, {2, 3}, {1, 3}), 3) is None
    assert delta_search(fam({1, 2}, {2, 3}, {1, 3}), 3).status == "impossible"


def test_delta_refine_rejects_small_target():
    with pytest.raises(ValueError):
        delta_refine(fam({1}), 1)


def test_set_family_removes_duplicates():
    assert len(fam({1, 2}, {2, 1}, {3})) == 2


def test_large_family_uses_sunflower():
    members = [{0, i, 100 + i} for i in range(1, 30)] + [{i, i + 1} for i in range(200, 240, 3)]
    result = delta_search(members, 20)
    assert result.found and result.certificate.method == "sunflower"
    assert is_delta_system(result.family, result.certificate.root)
    assert len(result.family) >= 20


small_families = st.lists(st.frozensets(st.integers(0, 7), max_size=4), min_size=2, max_size=12, unique=True)


@settings(max_examples=150, deadline=None)
@given(small_families, st.integers(2, 6))
def test_delta_refine_matches_exhaustive_oracle(members, target):
    expected = brute_delta(members)
    result = delta_refine(members, target)
    if expected >= target:
        sub, cert = result
        assert is_delta_system(sub, cert.root)
        assert len(sub) == expected
        assert all(s in SetFamily(members) for s in sub)
    else:
        assert result is None


@settings(max_examples=100, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 40), max_size=5), min_size=17, max_size=40, unique=True))
def test_delta_refine_large_output_is_delta_system(members):
    result = delta_refine(members, 3)
    if result is not None:
        sub, cert = result
        assert len(sub) >= 3 and is_delta_system(sub, cert.root)


# head-tail-tail


def test_head_tail_tail_examples():
    out = head_tail_tail_refine(fam({0, 9}, {0, 1}, {0, 5}), {0}, 2)
    assert len(out) >= 2 and is_head_tail_tail(out, FiniteOrdinalSet([0]))
    assert out[0] == FiniteOrdinalSet([0, 1])
    out = head_tail_tail_refine(fam({3, 1}, {3, 5}, {3, 7}), {3}, 1)
    assert FiniteOrdinalSet([1, 3]) not in out and len(out) == 2
    assert head_tail_tail_refine(fam({1}, {2}, {3}), EMPTY, 3) == fam({1}, {2}, {3})


def test_head_tail_tail_precondition():
    with pytest.raises(HeadTailTailError) as info:
        head_tail_tail_refine(fam({0, 1}, {0, 1, 2}), {0}, 2)
    assert len(info.value.witness) == 2


def brute_htt(members, root):
    best = 0
    for r in range(1, len(members) + 1):
        for chosen in itertools.combinations(members, r):
            if is_head_tail_tail(chosen, root):
                best = max(best, r)
    return best


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(3, 20), st.integers(0, 4)), min_size=1, max_size=8))
def test_head_tail_tail_is_maximum(intervals):
    root = FiniteOrdinalSet([0, 1])
    members = SetFamily(FiniteOrdinalSet([0, 1, 100 * k + lo, 100 * k + lo + w]) for k, (lo, w) in enumerate(intervals))
    out = head_tail_tail_refine(members, root, 1)
    assert out is not None and is_head_tail_tail(out, root)
    assert len(out) == brute_htt(members, root)


# condensation

MIXED = GroupSignature({0: Prufer(2)}, default=QQ)


def test_condense_cancels_finite_root():
    xs = [DirectSumElement(MIXED, {0: "1/2", i: 1}) for i in range(1, 9)]
    result = condense(xs, 4)
    assert result.complete and len(result.outputs) == 4
    assert result.certificate.multiplier == 2
    assert result.certificate.root_infinite == EMPTY
    for y, block in zip(result.outputs, result.certificate.blocks):
        assert y.support() == FiniteOrdinalSet(i + 1 for i in block)


def test_condense_keeps_infinite_root():
    xs = [DirectSumElement(MIXED, {"w": 1, i: 1}) for i in range(1, 6)]
    result = condense(xs, 5)
    assert result.certificate.multiplier == 1
    assert result.certificate.root_infinite == FiniteOrdinalSet(["w"])
    assert all(element_order(y["w"]) == float("inf") for y in result.outputs)


def test_condense_disjoint_is_identity():
    xs = [DirectSumElement(MIXED, {i: Fraction(i)}) for i in range(1, 6)]
    result = condense(xs, 5)
    assert sorted(result.outputs, key=lambda y: y.sort_key()) == sorted(xs, key=lambda y: y.sort_key())
    assert all(len(b) == 1 for b in result.certificate.blocks)


def test_condense_shortfall_is_reported():
    xs = [DirectSumElement(MIXED, {0: "1/4", i: 1}) for i in range(1, 8)]
    result = condense(xs, 3)
    assert not result.complete and len(result.outputs) == 1
    assert result.certificate.multiplier == 4


def test_condense_seed_determinism():
    xs = [DirectSumElement(MIXED, {0: "1/2", i: 1}) for i in range(1, 30)]
    assert condense(xs, 5, seed=7).certificate == condense(xs, 5, seed=7).certificate


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.sampled_from(["1/2", "1/4", "3/4", 1, 2]), min_size=1, max_size=2),
    st.integers(6, 20),
    st.integers(0, 99),
)
def test_condense_properties(root_values, size, seed):
    sig = GroupSignature({0: Prufer(2)}, default=QQ)
    root = {k: v if k == 0 else Fraction(v) for k, v in enumerate(root_values)}
    xs = [DirectSumElement(sig, {**root, 10 + 2 * i: 1, 11 + 2 * i: -1}) for i in range(size)]
    result = condense(xs, 2, seed=seed)
    used = [i for b in result.certificate.blocks for i in b]
    assert len(used) == len(set(used))
    for n in range(1, 4):
        assert verify_sum_support(result.outputs, n).ok
    supports = [y.support() for y in result.outputs]
    if len(supports) >= 2:
        assert is_delta_system(supports, result.certificate.root_infinite)
    for y in result.outputs:
        for alpha in result.certificate.root_infinite:
            assert element_order(y[alpha]) == float("inf")


def test_verify_sum_support_examples():
    sig = GroupSignature(default=QQ)
    x = DirectSumElement(sig, {0: 1, 1: 2})
    report = verify_sum_support([x, -x], 2)
    assert not report.ok and report.violations == [(0, 1)]
    assert verify_sum_support([x, -x], 1).ok
    xs = [DirectSumElement(MIXED, {0: "1/2", i: 1}) for i in range(1, 9)]
    assert verify_sum_support(condense(xs, 4).outputs, 2).ok
