"""Finite sums, sumsets and finite unions with provenance; searches over them.

Subsets are enumerated in colex order, which is the order of their bitmasks,
so ``fs`` lists ``{0}, {1}, {0,1}, {2}, {0,2}, ...``.  Records are never merged:
equal values reached from different generators are kept apart.
"""

from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .colourings import ElementColouring, SetColouring
from .groups import DirectSumElement, add, divide, nmul, sum_elements
from .ordinals import FiniteOrdinalSet, as_set

__all__ = [
    "CoverageReport",
    "DEFAULT_BOUND",
    "FSMode",
    "FSnMode",
    "PartitionCheck",
    "ResourceBoundError",
    "SuSMode",
    "SumRecord",
    "brute_force_partition_check",
    "coverage",
    "divisibility_transfer",
    "exhaustive_fsn_solver",
    "exhaustive_pair_solver",
    "extend_sumset_witness",
    "find_witness",
    "fs",
    "fs_n",
    "fu",
    "pair_colouring_from_fsn",
    "partition_meta_search",
    "pentagon_colouring",
    "sumset",
]

DEFAULT_BOUND = 10**6


class ResourceBoundError(RuntimeError):
    pass


class BlockSequenceError(ValueError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class SumRecord:
    """A value with the input indices it was summed from.

    ``generators`` is a sorted tuple of distinct indices for FS/FSₙ records
    and a tuple with one index per summand set for sumset records.
    """

    value: DirectSumElement
    generators: Tuple[int, ...]
    kind: str = "fs"

    def recompute(self, sources: Union[Sequence[DirectSumElement], Sequence[Sequence[DirectSumElement]]]) -> DirectSumElement:
        if self.kind == "sumset":
            return sum_elements([sources[k][i] for k, i in enumerate(self.generators)])
        return sum_elements([sources[i] for i in self.generators])

    def to_json(self) -> dict:
        return {"kind": self.kind, "generators": list(self.generators), "value": self.value.to_json(include_signature=False)}


def _check_bound(count: int, bound: int, what: str) -> None:
    if count > bound:
        raise ResourceBoundError(f"{what} would produce {count} records; the bound is {bound}")


def _count_subsets(n: int, max_terms: int) -> int:
    return sum(math.comb(n, k) for k in range(1, min(n, max_terms) + 1))


def _masks(n: int, max_terms: int) -> Iterator[int]:
    for mask in range(1, 1 << n):
        if bin(mask).count("1") <= max_terms:
            yield mask


def fs_iter(xs: Sequence[DirectSumElement], max_terms: Optional[int] = None, *, bound: int = DEFAULT_BOUND) -> Iterator[SumRecord]:
    xs = list(xs)
    n = len(xs)
    k = n if max_terms is None else max_terms
    _check_bound(_count_subsets(n, k), bound, "fs")
    # reuse the sum of the mask without its top bit
    cache: Dict[int, DirectSumElement] = {}
    for mask in _masks(n, k):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        value = xs[top] if not rest else add(cache[rest] if rest in cache else sum_elements([xs[i] for i in _bits(rest)]), xs[top])
        if mask.bit_length() < n:
            cache[mask] = value
        yield SumRecord(value, _bits(mask), "fs")


def _bits(mask: int) -> Tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def fs(xs: Sequence[DirectSumElement], max_terms: Optional[int] = None, *, bound: int = DEFAULT_BOUND) -> List[SumRecord]:
    """Sums over the nonempty subsets of ``xs`` with at most ``max_terms`` elements."""
    return list(fs_iter(xs, max_terms, bound=bound))


def _colex_combinations(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """k-subsets of range(n) in colex order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in _colex_combinations(top, k - 1):
            yield rest + (top,)


def fs_n(xs: Sequence[DirectSumElement], n: int, *, bound: int = DEFAULT_BOUND) -> List[SumRecord]:
    """Sums of exactly ``n`` distinct entries of ``xs`` (empty when ``n > len(xs)``)."""
    if n < 1:
        raise ValueError("n must be positive")
    xs = list(xs)
    if n > len(xs):
        return []
    _check_bound(math.comb(len(xs), n), bound, "fs_n")
    return [SumRecord(sum_elements([xs[i] for i in idx]), idx, "fsn") for idx in _colex_combinations(len(xs), n)]


def sumset(*sets: Sequence[DirectSumElement], bound: int = DEFAULT_BOUND) -> List[SumRecord]:
    """All sums picking one element from each set, in product order."""
    if not sets:
        return []
    sets = [list(s) for s in sets]
    _check_bound(math.prod(len(s) for s in sets), bound, "sumset")
    out = []
    for idx in product(*(range(len(s)) for s in sets)):
        out.append(SumRecord(sum_elements([sets[k][i] for k, i in enumerate(idx)]), idx, "sumset"))
    return out


def fu(blocks: Sequence) -> List[Tuple[FiniteOrdinalSet, Tuple[int, ...]]]:
    """Unions of nonempty subfamilies of a block sequence, with the blocks used."""
    blocks = [as_set(b) for b in blocks]
    for i, (x, y) in enumerate(zip(blocks, blocks[1:])):
        if not x or not y or not x.max() < y.min():
            raise BlockSequenceError(f"blocks {i} and {i + 1} are not separated: {x}, {y}", (i, i + 1))
    out = []
    for mask in range(1, 1 << len(blocks)):
        idx = _bits(mask)
        union = blocks[idx[0]]
        for i in idx[1:]:
            union = union | blocks[i]
        out.append((union, idx))
    return out


# -- coverage and witnesses ------------------------------------------------------


@dataclass
class CoverageReport:
    colour_space: Optional[int]
    counts: Dict[int, int] = field(default_factory=dict)
    exemplars: Dict[int, SumRecord] = field(default_factory=dict)

    @property
    def attained(self) -> List[int]:
        return sorted(self.counts)

    @property
    def missing(self) -> List[int]:
        if self.colour_space is None:
            return []
        return [c for c in range(self.colour_space) if c not in self.counts]

    def to_json(self) -> dict:
        return {
            "colour_space": self.colour_space,
            "attained": {str(c): {"count": self.counts[c], "exemplar": self.exemplars[c].to_json()} for c in self.attained},
            "missing": self.missing,
        }

    def to_rows(self) -> List[Tuple[int, int]]:
        """(colour, count) rows covering the whole colour space."""
        colours = range(self.colour_space) if self.colour_space is not None else self.attained
        return [(c, self.counts.get(c, 0)) for c in colours]


def coverage(c: ElementColouring, records: Iterable[SumRecord]) -> CoverageReport:
    report = CoverageReport(c.colour_space)
    for rec in records:
        colour = c(rec.value)
        if colour not in report.counts:
            report.counts[colour] = 0
            report.exemplars[colour] = rec
        report.counts[colour] += 1
    return report


@dataclass(frozen=True)
class FSMode:
    max_terms: Optional[int] = None


@dataclass(frozen=True)
class FSnMode:
    n: int


@dataclass(frozen=True)
class SuSMode:
    sets: Tuple[Tuple[DirectSumElement, ...], ...]


Mode = Union[FSMode, FSnMode, SuSMode]


def _mode_records(xs: Sequence[DirectSumElement], mode: Mode, bound: int) -> Iterator[SumRecord]:
    if isinstance(mode, FSMode):
        return fs_iter(xs, mode.max_terms, bound=bound)
    if isinstance(mode, FSnMode):
        return iter(fs_n(xs, mode.n, bound=bound))
    if isinstance(mode, SuSMode):
        return iter(sumset(*mode.sets, bound=bound))
    raise TypeError(f"unknown mode {mode!r}")


def _shard_search(c, records: List[SumRecord], delta: int, start: int) -> Optional[int]:
    for offset, rec in enumerate(records):
        if c(rec.value) == delta:
            return start + offset
    return None


def find_witness(
    c: ElementColouring,
    xs: Sequence[DirectSumElement],
    delta: int,
    mode: Mode = FSMode(),
    *,
    bound: int = DEFAULT_BOUND,
    executor: Optional[Executor] = None,
    shards: int = 1,
) -> Optional[SumRecord]:
    """First record in enumeration order whose value has colour ``delta``.

    With an executor the records are split into ``shards`` contiguous ranges;
    each worker reports its first hit and the least position wins, so the
    answer does not depend on sharding.
    """
    if c.colour_space is not None and not 0 <= delta < c.colour_space:
        return None
    records = _mode_records(xs, mode, bound)
    if executor is None or shards <= 1:
        for rec in records:
            if c(rec.value) == delta:
                return rec
        return None
    records = list(records)
    size = -(-len(records) // shards) if records else 0
    futures = [
        executor.submit(_shard_search, c, records[s:s + size], delta, s)
        for s in range(0, len(records), max(size, 1))
    ]
    hits = [f.result() for f in futures]
    hits = [h for h in hits if h is not None]
    return records[min(hits)] if hits else None


# -- witness transfer ------------------------------------------------------------


PairSolver = Callable[[ElementColouring, Sequence[DirectSumElement], Sequence[DirectSumElement], int], Optional[Tuple[int, int]]]


def exhaustive_pair_solver(c: ElementColouring, xs, ys, delta: int) -> Optional[Tuple[int, int]]:
    """First ``(i, j)`` in product order with ``c(xs[i] + ys[j]) == delta``."""
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            if c(add(x, y)) == delta:
                return i, j
    return None


def extend_sumset_witness(
    c: ElementColouring,
    pair_solver: PairSolver,
    sets: Sequence[Sequence[DirectSumElement]],
    delta: int,
    *,
    bound: int = DEFAULT_BOUND,
) -> Optional[Tuple[int, ...]]:
    """Indices ``(i_1, ..., i_{n+1})`` with ``c(X_1[i_1] + ... + X_{n+1}[i_{n+1}]) == delta``.

    The first ``n`` sets are folded into one sumset (with provenance) and the
    pair solver is asked for a pair from that sumset and the last set.
    """
    if len(sets) < 2:
        raise ValueError("need at least two sets")
    *head, last = [list(s) for s in sets]
    if len(head) == 1:
        folded = [SumRecord(x, (i,), "sumset") for i, x in enumerate(head[0])]
    else:
        folded = sumset(*head, bound=bound)
    pair = pair_solver(c, [r.value for r in folded], last, delta)
    if pair is None:
        return None
    i, j = pair
    witness = folded[i].generators + (j,)
    total = sum_elements([s[k] for s, k in zip(sets, witness)])
    if c(total) != delta:
        raise AssertionError("pair solver returned a pair of the wrong colour")
    return witness


FSnSolver = Callable[[ElementColouring, Sequence[DirectSumElement], int, int], Optional[Tuple[int, ...]]]


def exhaustive_fsn_solver(c: ElementColouring, ys, n: int, delta: int) -> Optional[Tuple[int, ...]]:
    rec = find_witness(c, ys, delta, FSnMode(n))
    return rec.generators if rec is not None else None


def divisibility_transfer(
    c: ElementColouring,
    xs: Sequence[DirectSumElement],
    n: int,
    delta: int,
    fsn_solver: FSnSolver = exhaustive_fsn_solver,
) -> Optional[Tuple[int, ...]]:
    """Turn an FSₙ witness on a shifted copy of ``xs`` into an FSₙ₊₁ witness on ``xs``.

    With ``x = xs[0]`` and ``n z = x``, a colour-``delta`` sum of ``n``
    distinct ``y + z`` equals the sum of those ``y`` plus ``x``.  Returns the
    ``n + 1`` indices into ``xs`` (sorted), or None.
    """
    xs = list(xs)
    if n < 1:
        raise ValueError("n must be positive")
    if len(xs) < 2:
        return None
    x = xs[0]
    z = divide(n, x)
    if nmul(n, z) != x:
        raise AssertionError("divide broke its contract")
    ys = [add(y, z) for y in xs[1:]]
    found = fsn_solver(c, ys, n, delta)
    if found is None:
        return None
    indices = tuple(sorted({i + 1 for i in found} | {0}))
    if len(indices) != n + 1:
        raise AssertionError("fsn solver returned repeated elements")
    shifted = sum_elements([ys[i] for i in found])
    total = sum_elements([xs[i] for i in indices])
    if shifted != total or c(total) != delta:
        raise AssertionError("transfer identity failed")
    return indices


def pair_colouring_from_fsn(c: ElementColouring, enumeration: Sequence[DirectSumElement], n: int) -> SetColouring:
    """``d({α_1, ..., α_n}) := c(x_{α_1} + ... + x_{α_n})`` on n-sets of indices."""
    enumeration = list(enumeration)
    if len(set(enumeration)) != len(enumeration):
        raise ValueError("the enumeration repeats an element")

    def evaluate(s: FiniteOrdinalSet) -> int:
        if len(s) != n:
            raise ValueError(f"expected a {n}-set of indices, got {s}")
        try:
            idx = [a.to_int() for a in s]
            return c(sum_elements([enumeration[i] for i in idx]))
        except (IndexError, ValueError) as exc:
            raise ValueError(f"index set {s} outside the enumeration") from exc

    return SetColouring(evaluate, c.colour_space, f"fsn-{n}({c.name})")


# -- finite partition relations -------------------------------------------------


@dataclass(frozen=True)
class PartitionCheck:
    holds: bool
    counterexample: Optional[Tuple[int, ...]] = None
    missing: Tuple[int, ...] = ()

    def __bool__(self):
        return self.holds


def brute_force_partition_check(
    n: int, lam: int, mu: int, theta: int, d: Callable[[Tuple[int, ...]], int], *, bound: int = DEFAULT_BOUND
) -> PartitionCheck:
    """Does every λ-subset of ``range(n)`` see all ``θ`` colours of ``d`` on its μ-subsets?

    ``d`` takes sorted tuples of ints.  On failure the first bad λ-set (in
    lexicographic order) and its missing colours are returned.
    """
    _check_bound(math.comb(n, lam) * math.comb(lam, mu), bound, "partition check")
    colour = {s: d(s) for s in combinations(range(n), mu)}
    for x in combinations(range(n), lam):
        seen = {colour[s] for s in combinations(x, mu)}
        if len(seen) < theta or any(not 0 <= v < theta for v in seen):
            missing = tuple(v for v in range(theta) if v not in seen)
            return PartitionCheck(False, x, missing)
    return PartitionCheck(True)


def pentagon_colouring(s: Tuple[int, ...]) -> int:
    """Colour 1 iff the two vertices are adjacent on the 5-cycle."""
    a, b = s
    return int((b - a) % 5 in (1, 4))


def partition_meta_search(n: int, lam: int, mu: int, theta: int, *, bound: int = DEFAULT_BOUND) -> List[Dict[Tuple[int, ...], int]]:
    """Every colouring of ``[n]^μ`` with θ colours passing :func:`brute_force_partition_check`.

    Colourings are enumerated as base-θ words over the μ-sets in
    lexicographic order.
    """
    mu_sets = list(combinations(range(n), mu))
    index = {s: i for i, s in enumerate(mu_sets)}
    lam_sets = [tuple(index[s] for s in combinations(x, mu)) for x in combinations(range(n), lam)]
    total = theta ** len(mu_sets)
    _check_bound(total, bound, "meta search")
    passing = []
    for code in range(total):
        digits = []
        v = code
        for _ in mu_sets:
            digits.append(v % theta)
            v //= theta
        ok = True
        for group in lam_sets:
            if len({digits[i] for i in group}) < theta:
                ok = False
                break
        if ok:
            passing.append({s: digits[i] for i, s in enumerate(mu_sets)})
    return passing
