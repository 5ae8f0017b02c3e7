import itertools
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsbench.colourings import ElementColouring, WitnessF, d_support, hash_colouring, log_parity
from fsbench.deltasystems import condense
from fsbench.fssets import (
    BlockSequenceError,
    FSMode,
    FSnMode,
    ResourceBoundError,
    SuSMode,
    brute_force_partition_check,
    coverage,
    divisibility_transfer,
    exhaustive_fsn_solver,
    exhaustive_pair_solver,
    extend_sumset_witness,
    find_witness,
    fs,
    fs_n,
    fu,
    pair_colouring_from_fsn,
    partition_meta_search,
    pentagon_colouring,
    sumset,
)
from fsbench.groups import QQ, DirectSumElement, GroupSignature, Prufer, add, divide, nmul, sum_elements
from fsbench.instances import PADDING_START, MulticubeInstance, rational_family
from fsbench.ordinals import FiniteOrdinalSet

SIG = GroupSignature(default=QQ)


def e(entries):
    return DirectSumElement(SIG, entries)


def values(records):
    return {r.value for r in records}


def const(gamma, theta):
    return ElementColouring(lambda x: gamma, theta, f"const-{gamma}")


def support_size_mod(theta):
    return ElementColouring(lambda x: len(x.support()) % theta, theta, f"size-mod-{theta}")


families = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-3, 3).filter(bool), min_size=1, max_size=3),
    min_size=1,
    max_size=8,
).map(lambda ds: [e(d) for d in ds])


# enumeration


def test_fs_examples():
    x1, x2 = e({0: 1}), e({1: 2})
    assert values(fs([x1, x2], 2)) == {x1, x2, add(x1, x2)}
    x = e({0: 1, 3: -2})
    assert SIG.zero() in values(fs([x, -x]))
    assert [r.generators for r in fs([x, -x])] == [(0,), (1,), (0, 1)]
    assert fs([]) == []


def test_fs_n_examples():
    xs = [e({i: 1}) for i in range(3)]
    assert len(fs_n(xs, 2)) == 3
    assert values(fs_n(xs, 1)) == set(xs)
    assert fs_n(xs, 4) == []
    assert [r.generators for r in fs_n([e({i: 1}) for i in range(4)], 2)] == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_sumset_examples():
    a, b = e({0: 1}), e({1: 1})
    assert values(sumset([a], [b])) == {add(a, b)}
    xs = [e({i: 1}) for i in range(5)]
    assert len(values(sumset(xs, [b]))) == len(xs)
    x = e({0: 1})
    assert values(sumset([x], [x])) == {nmul(2, x)}
    assert fs_n([x], 2) == []


def test_fu_examples():
    assert len(fu([{1, 2}, {5}])) == 3
    assert [u for u, _ in fu([{1}, {5}])] == [FiniteOrdinalSet([1]), FiniteOrdinalSet([5]), FiniteOrdinalSet([1, 5])]
    with pytest.raises(BlockSequenceError):
        fu([{1, 5}, {2, 9}])


def test_resource_bound():
    with pytest.raises(ResourceBoundError):
        fs([e({i: 1}) for i in range(12)], bound=100)


@settings(max_examples=50, deadline=None)
@given(families)
def test_fs_counts_and_records_revalidate(xs):
    records = fs(xs)
    assert len(records) == 2 ** len(xs) - 1
    for rec in records:
        assert rec.recompute(xs) == rec.value == sum_elements([xs[i] for i in rec.generators])


def test_fs_count_twelve():
    xs = [e({i: 1}) for i in range(12)]
    assert len(fs(xs)) == 2**12 - 1


@settings(max_examples=50, deadline=None)
@given(families, st.integers(1, 4))
def test_fs_n_inside_fs(xs, n):
    assert values(fs_n(xs, n)).issubset(values(fs(xs, n)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=4, max_size=9), st.integers(2, 3))
def test_sumset_bridge(coefficients, n):
    xs = [e({i: c}) for i, c in enumerate(coefficients)]
    size = len(xs) // n
    parts = [xs[k * size:(k + 1) * size] for k in range(n)]
    fsn_values = values(fs_n(xs, n))
    for rec in sumset(*parts):
        assert rec.value in fsn_values


def test_sumset_records_revalidate():
    parts = [[e({0: 1}), e({1: 1})], [e({2: 3})], [e({0: -1}), e({3: 1})]]
    for rec in sumset(*parts):
        assert rec.recompute(parts) == rec.value


def test_condensation_fs_inside_fs():
    sig = GroupSignature({0: Prufer(2)}, default=QQ)
    for seed in range(5):
        xs = [DirectSumElement(sig, {0: "1/2", 1 + i: i + 1}) for i in range(10)]
        result = condense(xs, 3, seed=seed)
        assert values(fs(result.outputs)).issubset(values(fs(xs)))


# coverage and witnesses


def test_coverage_examples():
    xs = [e({i: 1}) for i in range(3)]
    report = coverage(const(1, 3), fs(xs))
    assert report.attained == [1] and report.missing == [0, 2]
    assert report.to_rows() == [(0, 0), (1, 7), (2, 0)]
    assert coverage(const(1, 3), []).missing == [0, 1, 2]


def test_coverage_log_parity_on_condensation():
    sig = GroupSignature({0: Prufer(2)}, default=QQ)
    sizes = [2, 4, 8]
    xs = []
    start = 1
    for size in sizes:
        for _ in range(2):
            xs.append(DirectSumElement(sig, {0: "1/2", **{start + j: 1 for j in range(size // 2)}}))
            start += size // 2
    result = condense(xs, 3)
    assert result.certificate.multiplier == 2
    assert sorted(len(y.support()) for y in result.outputs) == sizes
    c = ElementColouring(lambda x: log_parity(x.support(), 2), 2)
    assert coverage(c, fs(result.outputs)).attained == [0, 1]


def test_find_witness_examples():
    xs = [e({i: 1}) for i in range(4)]
    first = find_witness(const(2, 3), xs, 2)
    assert first.generators == (0,)
    assert find_witness(const(2, 3), xs, 3) is None
    rec = find_witness(support_size_mod(4), xs, 3, FSnMode(3))
    assert rec.generators == (0, 1, 2)
    rec = find_witness(support_size_mod(3), xs, 2, SuSMode(((xs[0], xs[1]), (xs[2], xs[3]))))
    assert rec.kind == "sumset" and rec.generators == (0, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_find_witness_sharding_is_deterministic(seed, shards):
    xs = rational_family(seed, 8)
    c = hash_colouring(5, seed)
    with ThreadPoolExecutor(max_workers=3) as pool:
        for delta in range(5):
            serial = find_witness(c, xs, delta, FSMode(4))
            parallel = find_witness(c, xs, delta, FSMode(4), executor=pool, shards=shards)
            assert serial == parallel


@pytest.mark.parametrize("c_size", [0, 1])
def test_find_witness_multicube_replay(c_size):
    f = WitnessF()
    inst = MulticubeInstance(1, 1, 1, 1, seed=0)
    A = inst.A(4)
    p = FiniteOrdinalSet(A[2:2 + c_size])
    k = inst.least_k(f, c_size)
    ys = [inst.element(i) for i in range(4)] + [inst.element(PADDING_START + j) for j in range(k - c_size)]
    hit = ElementColouring(lambda x: int(d_support(f, x.support()) == p), 2, "hits-p")
    rec = find_witness(hit, ys, 1, FSnMode(k))
    assert rec is not None
    assert d_support(f, rec.value.support()) == p


# transfer


def test_extend_sumset_witness():
    xs = [[e({0: 1}), e({1: 1})], [e({2: 1}), e({0: -1})], [e({3: 1}), e({4: 1})]]
    c = support_size_mod(4)
    for delta in range(4):
        expected = [idx for idx in itertools.product(range(2), repeat=3) if c(sum_elements([s[i] for s, i in zip(xs, idx)])) == delta]
        found = extend_sumset_witness(c, exhaustive_pair_solver, xs, delta)
        if expected:
            assert found in expected
            assert c(sum_elements([s[i] for s, i in zip(xs, found)])) == delta
        else:
            assert found is None
    assert extend_sumset_witness(c, lambda *args: None, xs, 1) is None


def test_extend_sumset_with_neutral_adjustments():
    xs = [[e({0: 1}), e({1: 1})], [e({2: 2})], [SIG.zero(), e({5: 1})]]
    c = support_size_mod(3)
    found = extend_sumset_witness(c, exhaustive_pair_solver, xs, 2)
    assert c(sum_elements([s[i] for s, i in zip(xs, found)])) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 10), st.integers(1, 3))
def test_divisibility_transfer(seed, size, n):
    xs = rational_family(seed, size)
    c = hash_colouring(3, seed)
    x = xs[0]
    assert nmul(n, divide(n, x)) == x
    z = divide(n, x)
    ys = [add(y, z) for y in xs[1:]]
    for delta in range(3):
        found = divisibility_transfer(c, xs, n, delta)
        attained = exhaustive_fsn_solver(c, ys, n, delta) is not None
        assert (found is not None) == attained
        if found is not None:
            assert len(set(found)) == n + 1
            assert c(sum_elements([xs[i] for i in found])) == delta


def test_divisibility_transfer_singleton():
    assert divisibility_transfer(const(0, 1), [e({0: 1})], 2, 0) is None


def test_pair_colouring_from_fsn():
    xs = [e({i: i + 1}) for i in range(4)]
    d = pair_colouring_from_fsn(const(1, 2), xs, 2)
    assert {d({a, b}) for a, b in itertools.combinations(range(4), 2)} == {1}
    c = support_size_mod(5)
    d = pair_colouring_from_fsn(c, xs, 2)
    assert d({1, 3}) == c(add(xs[1], xs[3]))
    d3 = pair_colouring_from_fsn(c, xs, 3)
    assert len([d3(t) for t in itertools.combinations(range(4), 3)]) == 4
    with pytest.raises(ValueError):
        d({1, 2, 3})


# partition checks


def test_partition_examples():
    assert brute_force_partition_check(5, 3, 2, 2, pentagon_colouring).holds
    result = brute_force_partition_check(5, 3, 2, 2, lambda s: 0)
    assert not result and result.counterexample == (0, 1, 2) and result.missing == (1,)


def test_partition_meta_search_six():
    assert partition_meta_search(6, 3, 2, 2) == []


def test_partition_meta_search_five():
    passing = partition_meta_search(5, 3, 2, 2)
    pentagon = {s: pentagon_colouring(s) for s in itertools.combinations(range(5), 2)}
    assert pentagon in passing
    assert all(brute_force_partition_check(5, 3, 2, 2, lambda s, d=d: d[s]).holds for d in passing)


def test_exact_values_no_float():
    x = e({0: Fraction(1, 3)})
    assert sum_elements([x, x, x]) == e({0: 1})
