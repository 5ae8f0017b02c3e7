"""Delta-system extraction, head-tail-tail refinement and condensation."""

from __future__ import annotations

import math
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .groups import DirectSumElement, INFINITE_ORDER, element_order, sum_elements
from .ordinals import EMPTY, FiniteOrdinalSet, as_set, is_head_tail_tail

__all__ = [
    "CondensationCertificate",
    "CondensationResult",
    "DeltaCertificate",
    "DeltaSearch",
    "HeadTailTailError",
    "SetFamily",
    "condense",
    "delta_refine",
    "delta_search",
    "head_tail_tail_refine",
    "is_delta_system",
    "verify_sum_support",
    "SumSupportReport",
]

#: families up to this size are searched exhaustively
EXHAUSTIVE_LIMIT = 16


class SetFamily(tuple):
    """A finite sequence of pairwise distinct finite ordinal sets (first occurrence wins)."""

    def __new__(cls, members: Iterable = ()):
        seen = set()
        out = []
        for m in members:
            s = as_set(m)
            if s not in seen:
                seen.add(s)
                out.append(s)
        return super().__new__(cls, out)

    def __repr__(self):
        return "SetFamily([" + ", ".join(str(m) for m in self) + "])"

    def to_json(self) -> list:
        return [m.to_json() for m in self]

    @classmethod
    def from_json(cls, data) -> "SetFamily":
        return cls(FiniteOrdinalSet.from_json(m) for m in data)


def is_delta_system(family: Sequence[FiniteOrdinalSet], root: FiniteOrdinalSet) -> bool:
    """Every pair of (distinct) members intersects exactly in ``root``."""
    root = as_set(root)
    members = [as_set(m) for m in family]
    if len(set(members)) != len(members):
        return False
    if len(members) == 1:
        return root.issubset(members[0])
    return all(x.intersection(y) == root for x, y in combinations(members, 2))


@dataclass(frozen=True)
class DeltaCertificate:
    root: FiniteOrdinalSet
    indices: Tuple[int, ...]
    head_tail_tail: bool = False
    method: str = "exhaustive"

    def to_json(self) -> dict:
        return {
            "root": self.root.to_json(),
            "indices": list(self.indices),
            "head_tail_tail": self.head_tail_tail,
            "method": self.method,
        }


@dataclass(frozen=True)
class DeltaSearch:
    """Outcome of :func:`delta_search`.

    ``status`` is ``"found"``, ``"impossible"`` (exhaustive search proved no
    subfamily of the requested size exists) or ``"heuristic_failed"``.
    """

    status: str
    family: Optional[SetFamily] = None
    certificate: Optional[DeltaCertificate] = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def _max_clique(vertices: List[int], adjacent: Dict[int, int]) -> List[int]:
    """Maximum clique (lexicographically least among maximum ones) by branch and bound.

    ``adjacent[v]`` is a bitmask over positions in ``vertices``.
    """
    best: List[int] = []

    def grow(chosen: List[int], candidates: int):
        nonlocal best
        if not candidates:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        if len(chosen) + bin(candidates).count("1") <= len(best):
            return
        while candidates:
            if len(chosen) + bin(candidates).count("1") <= len(best):
                return
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            chosen.append(v)
            grow(chosen, candidates & adjacent[v])
            chosen.pop()

    grow([], (1 << len(vertices)) - 1)
    return [vertices[i] for i in best]


def _exhaustive(members: Sequence[FiniteOrdinalSet], target: int) -> Optional[Tuple[FiniteOrdinalSet, List[int]]]:
    """Largest Delta-subsystem; the root must be a pairwise intersection (or any member for size 1)."""
    roots = sorted({x & y for x, y in combinations(members, 2)})
    best: Optional[Tuple[FiniteOrdinalSet, List[int]]] = None
    for root in roots:
        pool = [i for i, x in enumerate(members) if root.issubset(x)]
        if len(pool) < max(target, 2) or (best is not None and len(pool) <= len(best[1])):
            continue
        adjacent = {}
        for a, i in enumerate(pool):
            mask = 0
            for b, j in enumerate(pool):
                if a != b and (members[i] & members[j]) == root:
                    mask |= 1 << b
            adjacent[a] = mask
        clique = _max_clique(pool, adjacent)
        if len(clique) >= 2 and (best is None or len(clique) > len(best[1])):
            best = (root, sorted(clique))
    return best


def _sunflower(indices: List[int], members: Sequence[FiniteOrdinalSet], target: int, core: FiniteOrdinalSet):
    """Classical sunflower extraction on members that all contain ``core``.

    Returns (root, indices) or None.
    """
    tails = {i: members[i] - core for i in indices}
    # greedy maximal family of pairwise disjoint tails, shortest first
    disjoint: List[int] = []
    used: set = set()
    for i in sorted(indices, key=lambda i: (len(tails[i]), i)):
        if used.isdisjoint(tails[i]):
            disjoint.append(i)
            used.update(tails[i])
    if len(disjoint) >= target:
        return core, sorted(disjoint)
    # some element of the union of those tails is in many members
    counts = Counter(e for i in indices for e in tails[i] if e in used)
    for element, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
        pool = [i for i in indices if element in tails[i]]
        if len(pool) < target:
            break
        result = _sunflower(pool, members, target, core | FiniteOrdinalSet([element]))
        if result is not None:
            return result
    return None


def delta_search(family: Iterable, target: int) -> DeltaSearch:
    """Look for a Delta-subsystem of at least ``target`` members."""
    if target < 2:
        raise ValueError("target must be at least 2")
    members = SetFamily(family)
    if len(members) < target:
        return DeltaSearch("impossible")
    if len(members) <= EXHAUSTIVE_LIMIT:
        best = _exhaustive(members, target)
        if best is None or len(best[1]) < target:
            return DeltaSearch("impossible")
        root, idx = best
        method = "exhaustive"
    else:
        # the whole family first, then the classical uniform-size groups
        by_size: Dict[int, List[int]] = defaultdict(list)
        for i, m in enumerate(members):
            by_size[len(m)].append(i)
        groups = [list(range(len(members)))]
        groups += [by_size[k] for k in sorted(by_size, key=lambda k: (-len(by_size[k]), k)) if len(by_size) > 1]
        found = None
        for group in groups:
            if len(group) < target:
                continue
            found = _sunflower(group, members, target, EMPTY)
            if found is not None:
                break
        if found is None:
            return DeltaSearch("heuristic_failed")
        root, idx = found
        method = "sunflower"
    sub = SetFamily(members[i] for i in idx)
    cert = DeltaCertificate(root, tuple(idx), is_head_tail_tail(sub, root), method)
    return DeltaSearch("found", sub, cert)


def delta_refine(family: Iterable, target: int) -> Optional[Tuple[SetFamily, DeltaCertificate]]:
    """A Delta-subsystem of size at least ``target`` with its certificate, or None.

    Use :func:`delta_search` to tell a proven impossibility from a heuristic miss.
    """
    result = delta_search(family, target)
    return (result.family, result.certificate) if result.found else None


class HeadTailTailError(ValueError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


def head_tail_tail_refine(family: Iterable, root, target: int) -> Optional[SetFamily]:
    """Largest head-tail-tail subfamily, or None if it has fewer than ``target`` members.

    Tails are intervals [min, max] in the ordinal line; choosing a maximum set
    of pairwise separated tails is interval scheduling, solved greedily by
    earliest right end.  The result is listed in increasing tail order.
    """
    members = SetFamily(family)
    root = as_set(root)
    for x, y in combinations(members, 2):
        if x & y != root:
            raise HeadTailTailError(f"{x} and {y} do not meet in the root {root}", (x, y))
    top = root.max() if root else None
    eligible = []
    for x in members:
        if not root.issubset(x):
            raise HeadTailTailError(f"{x} does not contain the root {root}", (x,))
        tail = x - root
        if not tail or (top is not None and top >= tail.min()):
            continue
        eligible.append((tail.max(), tail.min(), x))
    eligible.sort(key=lambda t: (t[0], t[1]))
    chosen = []
    last = None
    for hi, lo, x in eligible:
        if last is None or lo > last:
            chosen.append(x)
            last = hi
    if len(chosen) < target:
        return None
    return SetFamily(chosen)


# -- condensation --------------------------------------------------------------


@dataclass(frozen=True)
class CondensationCertificate:
    blocks: Tuple[Tuple[int, ...], ...]
    root_infinite: FiniteOrdinalSet
    multiplier: int
    delta_root: FiniteOrdinalSet = EMPTY

    def to_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "root_infinite": self.root_infinite.to_json(),
            "multiplier": self.multiplier,
            "delta_root": self.delta_root.to_json(),
        }


@dataclass
class CondensationResult:
    outputs: List[DirectSumElement]
    certificate: CondensationCertificate
    shortfall: Optional[str] = None

    @property
    def complete(self) -> bool:
        return self.shortfall is None


def _lcm(values: Iterable[int]) -> int:
    return math.lcm(1, *values)


def condense(
    xs: Sequence[DirectSumElement],
    target: int,
    seed: int = 0,
    *,
    check_terms: int = 4,
    check_limit: int = 2000,
) -> Optional[CondensationResult]:
    """Thin out ``xs`` and sum disjoint blocks so that supports add up exactly.

    Steps: Delta-refine the supports; keep the largest class of survivors that
    agree on every root coordinate; split the root into the infinite-order part
    and the rest; sum blocks of ``m`` survivors, ``m`` the lcm of the finite
    orders, so that the finite-order root values cancel.

    Returns None only if no Delta-system of two or more supports exists.  A
    result with ``shortfall`` set carries fewer than ``target`` outputs.
    Every result is checked against the sum-of-supports identity for tuples of
    up to ``check_terms`` outputs (sampled beyond ``check_limit`` tuples).
    """
    if target < 1:
        raise ValueError("target must be positive")
    xs = list(xs)
    if not xs:
        return None
    sig = xs[0].signature
    if any(x.signature != sig for x in xs):
        raise ValueError("elements do not share a signature")

    # (i) one element per support, then a Delta-system of supports
    first_by_support: Dict[FiniteOrdinalSet, int] = {}
    for i, x in enumerate(xs):
        first_by_support.setdefault(x.support(), i)
    supports = list(first_by_support)
    if len(supports) == 1:
        chosen_idx = [first_by_support[supports[0]]]
        root = supports[0]
    else:
        # the sunflower heuristic stops at the first level reaching its target,
        # so ask for large systems first
        want = len(supports)
        while True:
            search = delta_search(supports, want)
            if search.found or want == 2:
                break
            want = max(2, want // 2)
        if not search.found:
            return None
        root = search.certificate.root
        chosen_idx = [first_by_support[supports[k]] for k in search.certificate.indices]

    # (ii) pigeonhole on root values
    def root_key(i):
        return tuple(str(xs[i][alpha]) for alpha in root)

    classes: Dict[tuple, List[int]] = defaultdict(list)
    for i in chosen_idx:
        classes[root_key(i)].append(i)
    best_key = min(classes, key=lambda k: (-len(classes[k]), ";".join(k)))
    survivors = sorted(classes[best_key])

    # (iii) split the root, (iv) multiplier
    g = xs[survivors[0]]
    orders = {alpha: element_order(g[alpha]) for alpha in root}
    r_inf = FiniteOrdinalSet(a for a, o in orders.items() if o == INFINITE_ORDER)
    m = _lcm(int(o) for o in orders.values() if o != INFINITE_ORDER)

    # (v) disjoint m-blocks from a seeded subset of survivors
    available = len(survivors) // m
    count = min(target, available)
    rng = random.Random(seed)
    picked = sorted(rng.sample(survivors, count * m))
    blocks = tuple(tuple(picked[k * m:(k + 1) * m]) for k in range(count))
    outputs = [sum_elements([xs[i] for i in block]) for block in blocks]
    cert = CondensationCertificate(blocks, r_inf, m, root)

    shortfall = None
    if count < target:
        shortfall = (
            f"{len(xs)} inputs, {len(chosen_idx)} in the Delta-system, {len(survivors)} agree on the root; "
            f"blocks of {m} give {count} < {target} outputs"
        )
    result = CondensationResult(outputs, cert, shortfall)
    for n in range(2, check_terms + 1):
        report = verify_sum_support(outputs, n, limit=check_limit, seed=seed)
        if report.violations:
            raise AssertionError(f"condensation violates the support identity: {report.violations[0]}")
    return result


@dataclass
class SumSupportReport:
    n: int
    checked: int
    exhaustive: bool
    violations: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "violations": [list(v) for v in self.violations],
        }


def verify_sum_support(ys: Sequence[DirectSumElement], n: int, *, limit: int = 20000, seed: int = 0) -> SumSupportReport:
    """Check supp(y_1 + ... + y_n) == supp(y_1) | ... | supp(y_n) over n-subsets of ``ys``.

    All subsets are checked when there are at most ``limit`` of them; otherwise
    ``limit`` of them are sampled with the given seed.
    """
    ys = list(ys)
    if n < 1 or n > len(ys):
        return SumSupportReport(n, 0, True)
    total = math.comb(len(ys), n)
    if total <= limit:
        tuples: Iterable[Tuple[int, ...]] = combinations(range(len(ys)), n)
        exhaustive = True
    else:
        rng = random.Random(seed)
        tuples = (tuple(sorted(rng.sample(range(len(ys)), n))) for _ in range(limit))
        exhaustive = False
    report = SumSupportReport(n, 0, exhaustive)
    for t in tuples:
        report.checked += 1
        lhs = sum_elements([ys[i] for i in t]).support()
        rhs = EMPTY
        for i in t:
            rhs = rhs | ys[i].support()
        if lhs != rhs:
            report.violations.append(t)
    return report
