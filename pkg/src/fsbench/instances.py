"""Seeded generators for the finite instances the suites run on.

Every generator takes a :class:`random.Random` (or a seed) and is
deterministic given it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .colourings import (
    DenseFamily,
    EntangledInstance,
    PairOracle,
    WitnessF,
    choose_shift,
    d_support,
    encode,
    _mix64,
    make_synthetic_osc,
    pair_encode,
)
from .groups import (
    QQ,
    AbelianPresentation,
    DirectSumElement,
    GroupSignature,
    Prufer,
    PruferValue,
    element_order,
    sum_elements,
)
from .ordinals import ONE, ZERO, FiniteOrdinalSet, Ordinal, nat

__all__ = [
    "MIXED_SIGNATURE",
    "MulticubeInstance",
    "OscInstance",
    "Pr1Instance",
    "EntangledSandwich",
    "condensation_input",
    "cyclic_table",
    "delta_sum_instance",
    "entangled_instance",
    "osc_instance",
    "pr1_instance",
    "random_presentation",
    "rational_family",
]


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _omega_plus(k: int, j: int) -> Ordinal:
    """ω·k + j for k >= 1."""
    terms = [(ONE, k)]
    if j:
        terms.append((ZERO, j))
    return Ordinal._make(tuple(terms))


# coordinates 0..7 host roots; their kinds are mixed, everything else is Q
_ROOT_KINDS = {0: QQ, 1: Prufer(2), 2: Prufer(3), 3: QQ, 4: Prufer(2), 5: Prufer(5), 6: QQ, 7: Prufer(3)}
MIXED_SIGNATURE = GroupSignature(_ROOT_KINDS, default=QQ)
_ROOT_SLOTS = sorted(_ROOT_KINDS)

_Q_SMALL = [Fraction(v) for v in (1, -1, 2, -2)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 3)]


def _prufer_pool(p: int, depth: int = 2) -> List[PruferValue]:
    return [PruferValue(p, a, k) for k in range(1, depth + 1) for a in range(1, p**k) if a % p]


_PRUFER_SMALL = {p: _prufer_pool(p) for p in (2, 3, 5)}


def _random_value(rng: random.Random, kind):
    if kind == QQ:
        return rng.choice(_Q_SMALL)
    return rng.choice(_PRUFER_SMALL[kind.p])


def _tail_pool(rng: random.Random, count: int, sizes: Sequence[int]) -> List[List[Ordinal]]:
    """``count`` pairwise disjoint tails above the root slots, mixing naturals and ordinals past ω."""
    total = sum(sizes)
    naturals = list(range(8, 8 + 2 * total + 4))
    transfinite = [_omega_plus(k, j) for k in (1, 2) for j in range(total + 2)]
    pool = [nat(v) for v in naturals] + transfinite
    chosen = rng.sample(pool, total)
    out, pos = [], 0
    for size in sizes:
        out.append(chosen[pos:pos + size])
        pos += size
    return out


@dataclass
class DeltaSumInstance:
    elements: List[DirectSumElement]
    root: FiniteOrdinalSet
    tails: List[FiniteOrdinalSet]


def delta_sum_instance(seed, max_terms: int = 6) -> DeltaSumInstance:
    """Up to ``max_terms`` elements whose supports form a Δ-system with disjoint nonempty tails.

    Root values come from small pools so that cancellation on the root is common.
    """
    rng = _rng(seed)
    n = rng.randint(1, max_terms)
    root = sorted(rng.sample(_ROOT_SLOTS, rng.randint(0, 4)))
    tails = _tail_pool(rng, n, [rng.randint(1, 3) for _ in range(n)])
    elements = []
    for tail in tails:
        entries = {nat(r): _random_value(rng, _ROOT_KINDS[r]) for r in root}
        for t in tail:
            entries[t] = rng.choice(_Q_SMALL)
        elements.append(DirectSumElement._make(MIXED_SIGNATURE, entries, ordered=False))
    return DeltaSumInstance(elements, FiniteOrdinalSet(nat(r) for r in root), [FiniteOrdinalSet(t) for t in tails])


@dataclass
class CondensationInput:
    elements: List[DirectSumElement]
    root: FiniteOrdinalSet
    expected_multiplier: int
    majority: int
    target: int


_PRUFER_BY_ORDER: Dict[Tuple[int, int], List[PruferValue]] = {}
for _p in (2, 3, 5):
    for _v in _prufer_pool(_p, 3 if _p == 2 else 2):
        _PRUFER_BY_ORDER.setdefault((_p, _v.order()), []).append(_v)


def condensation_input(seed, size: Optional[int] = None, max_target: int = 12) -> CondensationInput:
    """``size`` elements (8 to 64) over a Δ-system of supports with mixed Q / Prüfer root values.

    A minority of at most a quarter of the elements disagrees with the rest on
    one root coordinate, so the pigeonhole step has work to do.  Finite orders
    are drawn so that the majority still yields at least two blocks.
    """
    rng = _rng(seed)
    if size is None:
        size = rng.randint(8, 64)
    minority = rng.randint(0, size // 4) if rng.random() < 0.5 else 0
    majority = size - minority
    while True:
        root_slots = sorted(rng.sample(_ROOT_SLOTS, rng.randint(1, 4)))
        values = {}
        for r in root_slots:
            kind = _ROOT_KINDS[r]
            if kind == QQ:
                values[r] = rng.choice(_Q_SMALL)
            else:
                options = [v for (p, o), vs in _PRUFER_BY_ORDER.items() if p == kind.p for v in vs]
                values[r] = rng.choice(options)
        m = math.lcm(1, *(int(element_order(v)) for v in values.values() if element_order(v) != math.inf))
        if 2 * m <= majority:
            break
    odd_slot = rng.choice(root_slots)
    kind = _ROOT_KINDS[odd_slot]
    odd_value = values[odd_slot]
    while odd_value == values[odd_slot]:
        odd_value = _random_value(rng, kind)
    tails = _tail_pool(rng, size, [rng.randint(1, 3) for _ in range(size)])
    odd_positions = set(rng.sample(range(size), minority))
    elements = []
    for i, tail in enumerate(tails):
        entries = {nat(r): values[r] for r in root_slots}
        if i in odd_positions:
            entries[nat(odd_slot)] = odd_value
        for t in tail:
            entries[t] = rng.choice(_Q_SMALL)
        elements.append(DirectSumElement._make(MIXED_SIGNATURE, entries, ordered=False))
    target = min(max_target, majority // m)
    return CondensationInput(elements, FiniteOrdinalSet(nat(r) for r in root_slots), m, majority, target)


# -- multicube replay -------------------------------------------------------------


#: the first tail of y_i for i < PADDING_START may be put into A
PADDING_START = 6

_TAIL_VALUES = [Fraction(v, d) for v in (1, 2, 3, 5) for d in (1, 2)]


@dataclass
class MulticubeInstance:
    """A head-tail-tail system of ``Q``-valued elements with supports of size ``m + n``.

    The root has ``a`` elements below ω (the head) and ``m - a`` above it;
    each ``y_i`` has ``b`` tail elements below ω (in increasing blocks) and
    ``n - b`` above.  Above ω the root and tail slots follow a fixed seeded
    pattern, so the position of every root element inside ``supp(y_i)`` is the
    same for all ``i``.
    """

    a: int
    b: int
    m: int
    n: int
    seed: int = 0
    _starts: List[int] = field(default_factory=list, repr=False)
    _cache: Dict[int, DirectSumElement] = field(default_factory=dict, repr=False)
    _padding: Dict[int, DirectSumElement] = field(default_factory=dict, repr=False)
    _ks: Dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not (1 <= self.a <= self.m and 1 <= self.b <= self.n):
            raise ValueError("need 1 <= a <= m and 1 <= b <= n")
        rng = random.Random(f"multicube:{self.a}:{self.b}:{self.m}:{self.n}:{self.seed}")
        pattern = ["R"] * (self.m - self.a) + ["T"] * (self.n - self.b)
        rng.shuffle(pattern)
        self.pattern = tuple(pattern)
        self._rng = rng
        self.signature = GroupSignature({}, default=QQ)
        self.root_values = [Fraction(rng.choice((1, 2, 3, -1, -2)), rng.choice((1, 2, 3))) for _ in range(self.m)]
        head = [nat(j) for j in range(self.a)]
        upper = [_omega_plus(q + 1, 0) for q, s in enumerate(self.pattern) if s == "R"]
        self.root = FiniteOrdinalSet(head + upper)

    def _start(self, i: int) -> int:
        while len(self._starts) <= i:
            prev_end = self._starts[-1] + self.b if self._starts else self.a
            self._starts.append(prev_end + self._rng.randint(0, 2))
        return self._starts[i]

    def element(self, i: int) -> DirectSumElement:
        y = self._cache.get(i)
        if y is not None:
            return y
        start = self._start(i)
        entries = {}
        for j in range(self.a):
            entries[nat(j)] = self.root_values[j]
        k = self.a
        h = _mix64(self.seed * 1_000_003 + i)
        for j in range(self.b):
            entries[nat(start + j)] = _TAIL_VALUES[(h >> (3 * j)) % len(_TAIL_VALUES)]
        for q, slot in enumerate(self.pattern):
            if slot == "R":
                entries[_omega_plus(q + 1, 0)] = self.root_values[k]
                k += 1
            else:
                entries[_omega_plus(q + 1, i + 1)] = _TAIL_VALUES[(h >> (3 * (self.b + q))) % len(_TAIL_VALUES)]
        y = DirectSumElement._make(self.signature, entries)
        self._cache[i] = y
        return y

    def A(self, size: int) -> FiniteOrdinalSet:
        if size > PADDING_START:
            raise ValueError(f"|A| is limited to {PADDING_START}")
        return FiniteOrdinalSet(nat(self._start(i)) for i in range(size))

    def least_k(self, f: WitnessF, c: int) -> int:
        """Least ``k >= max(c, 1)`` with ``f(m + n k) = {a + b j : j < c}``.

        Cached per ``c``; every WitnessF computes the same table.
        """
        k = self._ks.get(c)
        if k is None:
            target = encode(self.a + self.b * j for j in range(c))
            k = max(c, 1)
            while f.code(self.m + self.n * k) != target:
                k += 1
            self._ks[c] = k
        return k

    def padding_sum(self, count: int) -> Optional[DirectSumElement]:
        """Sum of ``y_i`` for ``PADDING_START <= i < PADDING_START + count`` (None for count 0)."""
        if count == 0:
            return None
        if count in self._padding:
            return self._padding[count]
        done = max((c for c in self._padding if c < count), default=0)
        parts = [self._padding[done]] if done else []
        parts += [self.element(PADDING_START + i) for i in range(done, count)]
        total = sum_elements(parts)
        self._padding[count] = total
        return total


@dataclass
class ReplayOutcome:
    p: FiniteOrdinalSet
    k: int
    d_value: FiniteOrdinalSet

    @property
    def ok(self) -> bool:
        return self.p == self.d_value


def replay_multicube(f: WitnessF, inst: MulticubeInstance, a_size: int, max_p: int = 4) -> List[ReplayOutcome]:
    """For every ``p ⊆ A`` with ``|p| <= max_p``: build ``x ∈ FS(Y)`` and compute ``d(supp x)``.

    With ``c = |p|`` and ``Ω = {a + b j : j < c}``, take the least ``k >= max(c, 1)``
    with ``f(m + n k) = Ω``, sum the ``c`` elements whose first tail lies in
    ``p`` and ``k - c`` padding elements placed after them.
    """
    A = inst.A(a_size)
    index_of = {alpha: i for i, alpha in enumerate(A)}
    ks = {c: inst.least_k(f, c) for c in range(0, min(max_p, a_size) + 1)}
    out = []
    for c in ks:
        padding = inst.padding_sum(ks[c] - c)
        for p in combinations(A, c):
            # padding first keeps the big sorted run in front for the merge
            parts = [] if padding is None else [padding]
            parts += [inst.element(index_of[alpha]) for alpha in p]
            x = sum_elements(parts)
            out.append(ReplayOutcome(FiniteOrdinalSet(p), ks[c], d_support(f, x.support())))
    return out


# -- synthetic pair-colouring instances ------------------------------------------------


def _roots(rng: random.Random, families: int, max_shared: int) -> Tuple[List[FiniteOrdinalSet], int]:
    """Roots inside 1..R whose elements lying in two or more roots number at most ``max_shared``."""
    size = rng.randint(1, max_shared + 2)
    pool = list(range(1, size + 1))
    while True:
        roots = [sorted(rng.sample(pool, rng.randint(0, len(pool)))) for _ in range(families)]
        counts: Dict[int, int] = {}
        for r in roots:
            for v in r:
                counts[v] = counts.get(v, 0) + 1
        if sum(1 for c in counts.values() if c >= 2) <= max_shared:
            return [FiniteOrdinalSet(r) for r in roots], size


def _blocks(start: int, sizes: Sequence[int], rng: random.Random) -> Tuple[List[FiniteOrdinalSet], int]:
    out = []
    pos = start
    for s in sizes:
        pos += rng.randint(0, 2)
        out.append(FiniteOrdinalSet(range(pos, pos + s)))
        pos += s
    return out, pos


@dataclass
class Pr1Instance:
    oracle: PairOracle
    theta: int
    chi: int
    eps: int
    delta: int
    chosen: List[FiniteOrdinalSet]  # x̄_0, ..., x̄_{n-1}


def pr1_instance(seed, max_shared: int = 10) -> Pr1Instance:
    """A finite pair colouring arranged as in the split-colouring argument.

    Pairs from ``a_γ × a_γ'`` get the code of ``(δ, ε + 1)``; every other pair
    of the universe gets a code whose level is at most ``ε``.
    """
    rng = _rng(seed)
    families = rng.randint(2, 3)
    theta = rng.randint(2, 6)
    chi = rng.randint(2, 6)
    eps = rng.randint(0, chi - 2)
    delta = rng.randrange(theta)
    roots, top = _roots(rng, families, max_shared)
    rows = []
    pos = top + 1
    for _ in range(2):
        row, pos = _blocks(pos, [rng.randint(1, 3) for _ in range(families)], rng)
        rows.append(row)
    a_gamma = FiniteOrdinalSet(v for blk in rows[0] for v in blk)
    a_gamma2 = FiniteOrdinalSet(v for blk in rows[1] for v in blk)
    universe = FiniteOrdinalSet(range(1, top + 1)) | a_gamma | a_gamma2
    table = {}
    for x, y in combinations(universe, 2):
        if x in a_gamma and y in a_gamma2:
            table[(x, y)] = pair_encode(delta, eps + 1, theta, chi)
        else:
            table[(x, y)] = pair_encode(rng.randrange(theta), rng.randint(0, eps), theta, chi)
    chosen = [roots[0] | rows[0][0]] + [roots[i] | rows[1][i] for i in range(1, families)]
    return Pr1Instance(PairOracle.from_table(table, "pr1-synthetic"), theta, chi, eps, delta, chosen)


@dataclass
class OscInstance:
    oracle: PairOracle
    family: DenseFamily
    eps: int
    iota: int
    top: int
    shift: int
    delta: int
    chosen: List[FiniteOrdinalSet]
    a: FiniteOrdinalSet
    b_shifted: FiniteOrdinalSet


def osc_instance(seed, max_shared: int = 10) -> OscInstance:
    """An oscillation-like oracle with the block hypotheses of the lower-trace argument.

    ``δ`` is fixed first; ``ι`` is the least index of the dense family with
    ``ψ_α(f_ι(α)) = δ`` on the block ``a``; the shift ``m`` is chosen so that
    ``ι`` is exactly the 2-adic valuation of ``max(osc[a × b_0]) + m``.
    """
    rng = _rng(seed)
    families = rng.randint(2, 3)
    roots, top = _roots(rng, families, max_shared)
    width = rng.randint(2, 4)
    delta = rng.randrange(width)
    k = rng.randint(1, 3)
    a_start = max(top + 1, delta + 1) + rng.randint(0, 2)
    a = FiniteOrdinalSet(range(a_start, a_start + k))
    family = DenseFamily(a, width)
    iota = family.index_of({alpha: delta for alpha in a})
    parts = [rng.randint(1, 3) for _ in range(families - 1)]
    l = sum(parts)
    b0_start = a_start + k + rng.randint(0, 2)
    b0 = FiniteOrdinalSet(range(b0_start, b0_start + l))
    eps = rng.randint(0, 12)
    base = [[rng.randint(0, 30) for _ in range(l)] for _ in range(k)]
    top_value = max(max(row) for row in base)
    shift = choose_shift(top_value, eps, iota)
    bm_start = b0_start + l + rng.randint(0, 3)
    bm = FiniteOrdinalSet(range(bm_start, bm_start + l))
    oracle = make_synthetic_osc(a, {0: b0, shift: bm}, base, rng.randrange(2**32), eps)
    xs, pos = [], bm_start
    for size in parts:
        xs.append(FiniteOrdinalSet(range(pos, pos + size)))
        pos += size
    chosen = [roots[0] | a] + [roots[i] | xs[i - 1] for i in range(1, families)]
    return OscInstance(oracle, family, eps, iota, top_value, shift, delta, chosen, a, bm)


@dataclass
class EntangledSandwich:
    instance: EntangledInstance
    x: FiniteOrdinalSet
    y: FiniteOrdinalSet
    delta: int


def entangled_instance(seed, max_root: int = 6) -> EntangledSandwich:
    """Data realizing the pattern used for the entangled-order colouring.

    With ``x = r ∪ a`` and ``y = r ∪ a'``: Δ is largest exactly on the pairs
    ``(a(j), a'(j))``, and for those ``l_{a(j)}(τ) ◁ l_{a'(j)}(τ)`` holds
    for ``τ <= δ`` only at ``τ = δ``.
    """
    rng = _rng(seed)
    size = rng.randint(1, 3)
    root_size = rng.randint(0, max_root)
    delta = rng.randint(0, 4)
    eps = max(1, (size + root_size).bit_length())
    prefixes = rng.sample(range(2 ** (eps + 1)), size + root_size)
    prefix_str = [format(v, f"0{eps + 1}b") for v in prefixes]
    root = list(range(1, root_size + 1))
    a = list(range(root_size + 1, root_size + 1 + size))
    a2 = list(range(root_size + 1 + size, root_size + 1 + 2 * size))
    strings = {}
    for i, r in enumerate(root):
        strings[r] = prefix_str[size + i] + rng.choice("01")
    for j in range(size):
        strings[a[j]] = prefix_str[j] + "0"
        strings[a2[j]] = prefix_str[j] + "1"
    length = delta + 1 + rng.randint(0, 2)
    indices = root + a + a2
    points = [(idx, tau) for idx in indices for tau in range(length)]
    order = points[:]
    rng.shuffle(order)
    position = {p: i for i, p in enumerate(order)}
    for j in range(size):
        for tau in range(delta + 1):
            p, q = (a[j], tau), (a2[j], tau)
            want_before = tau == delta
            if (position[p] < position[q]) != want_before:
                position[p], position[q] = position[q], position[p]
    order = sorted(points, key=position.__getitem__)
    maps = {idx: tuple((idx, tau) for tau in range(length)) for idx in indices}
    inst = EntangledInstance(tuple(order), maps, strings)
    return EntangledSandwich(inst, FiniteOrdinalSet(root + a), FiniteOrdinalSet(root + a2), delta)


# -- algebra inputs -------------------------------------------------------------------


def random_presentation(seed, max_generators: int = 4, entry_range: int = 10) -> AbelianPresentation:
    rng = _rng(seed)
    g = rng.randint(1, max_generators)
    rows = rng.randint(0, g + 1)
    relations = tuple(tuple(rng.randint(-entry_range, entry_range) for _ in range(g)) for _ in range(rows))
    return AbelianPresentation(g, relations)


def cyclic_table(m: int) -> List[List[int]]:
    return [[(i + j) % m for j in range(m)] for i in range(m)]


def rational_family(seed, size: int, coordinates: int = 6) -> List[DirectSumElement]:
    """``size`` distinct elements of a direct sum of copies of Q with small supports."""
    rng = _rng(seed)
    sig = GroupSignature({}, default=QQ)
    out: List[DirectSumElement] = []
    seen = set()
    while len(out) < size:
        support = rng.sample(range(coordinates), rng.randint(1, 3))
        x = DirectSumElement(sig, {s: Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)) for s in support})
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out
