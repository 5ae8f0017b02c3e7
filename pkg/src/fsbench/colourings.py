"""Colourings of finite sets and of group elements.

The witness function ``f`` with ``f(k) ⊆ k`` and the support colouring built
from it, log-parity colourings, the sandwich checks behind the two axioms, and
the pair-oracle driven colourings (split pair colouring, oscillation,
entangled order).
"""

from __future__ import annotations

import hashlib
import math
import threading
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .groups import DirectSumElement
from .ordinals import (
    FiniteOrdinalSet,
    Ordinal,
    OrdinalLike,
    as_set,
    nat,
    ordinal,
    otp_below,
)

__all__ = [
    "ColourError",
    "DenseFamily",
    "ElementColouring",
    "EntangledInstance",
    "OracleDomainError",
    "PairOracle",
    "SandwichResourceError",
    "SetColouring",
    "WitnessF",
    "check_axiom_pair",
    "check_axiom_star_instance",
    "choose_shift",
    "collapse_colouring",
    "compose",
    "d_entangled",
    "d_from_pr1",
    "d_osc",
    "d_support",
    "derive_pair_colouring",
    "encode",
    "hash_colouring",
    "log_parity",
    "log_parity_colouring",
    "make_synthetic_osc",
    "osc_colouring",
    "pair_decode",
    "pair_encode",
    "pr1_colouring",
    "psi_mod",
    "sandwich_sets",
    "sandwich_values",
    "seeded_value",
    "star_sandwich",
    "two_adic_valuation",
    "witness_f",
]

#: sandwich enumeration refuses intersections larger than this
SANDWICH_LIMIT = 20


class ColourError(ValueError):
    """A colouring produced a value outside its declared colour space."""


class OracleDomainError(ValueError):
    """A pair oracle or colouring was evaluated outside its configured universe."""


class SandwichResourceError(RuntimeError):
    pass


# -- the witness function f -----------------------------------------------------


def _decode(code: int) -> Tuple[int, ...]:
    out = []
    i = 0
    while code:
        if code & 1:
            out.append(i)
        code >>= 1
        i += 1
    return tuple(out)


def encode(omega_set) -> int:
    """Bitmask code of a finite set of naturals."""
    code = 0
    for i in omega_set:
        i = ordinal(i).to_int()
        code |= 1 << i
    return code


def _level(m: int, n: int, code: int) -> int:
    return max(m, n, code.bit_length())


def _requirements_of_level(level: int) -> Iterator[Tuple[int, int, int]]:
    """Requirements (m, n, code) with exactly this level, ordered by (code, n, m)."""
    for code in range(1 << level):
        for n in range(1, level + 1):
            for m in range(level + 1):
                if _level(m, n, code) == level:
                    yield m, n, code


class WitnessF:
    """A lazily built ``f: ω → [ω]^{<ω}`` with ``f(k) ⊆ k`` hitting every requirement infinitely often.

    A requirement is a triple ``(m, n, Ω)`` with ``n >= 1``; it asks for
    positions ``m + n*k`` carrying ``Ω``.  Its level is
    ``max(m, n, max(Ω) + 1)``.  Round ``t`` services, once each, every
    requirement of level at most ``t`` in order of (level, Ω-code, n, m).  The
    ``s``-th service overall (``s`` counts from 0) assigns ``Ω`` to the least
    unassigned position ``p >= max(s, m, max(Ω) + 1)`` congruent to ``m``
    modulo ``n``.  Since ``p >= s``, position ``q`` is never touched again once
    ``s > q``; positions left unassigned are read as the empty set.
    """

    def __init__(self):
        self._table: Dict[int, Tuple[int, int, int]] = {}  # position -> (code, m, n)
        self._stage = 0
        self._round = -1
        self._queue: List[Tuple[int, int, int]] = []
        self._cursor = 0
        self._max_position = -1
        self._lock = threading.RLock()

    # scheduling

    def _next_requirement(self) -> Tuple[int, int, int]:
        while self._cursor >= len(self._queue):
            self._round += 1
            self._queue = [r for level in range(1, self._round + 1) for r in _requirements_of_level(level)]
            self._cursor = 0
        req = self._queue[self._cursor]
        self._cursor += 1
        return req

    def _service(self) -> None:
        m, n, code = self._next_requirement()
        lo = max(self._stage, m, code.bit_length())
        p = lo + ((m - lo) % n)
        while p in self._table:
            p += n
        self._table[p] = (code, m, n)
        if p > self._max_position:
            self._max_position = p
        self._stage += 1

    def ensure(self, k: int) -> None:
        """Run the scheduler until position ``k`` is final."""
        with self._lock:
            while self._stage <= k:
                self._service()

    def run_through_round(self, t: int) -> None:
        """Complete every service of rounds up to ``t``."""
        with self._lock:
            while self._round < t or self._cursor < len(self._queue):
                if self._round == t and self._cursor >= len(self._queue):
                    break
                self._service()

    # reading

    def code(self, k: int) -> int:
        if k < 0:
            raise ValueError("f is defined on naturals")
        self.ensure(k)
        entry = self._table.get(k)
        return entry[0] if entry else 0

    def __call__(self, k: int) -> FiniteOrdinalSet:
        return FiniteOrdinalSet._from_sorted(tuple(nat(i) for i in _decode(self.code(k))))

    def indices(self, k: int) -> Tuple[int, ...]:
        """``f(k)`` as a sorted tuple of ints."""
        return _decode(self.code(k))

    @property
    def stage(self) -> int:
        return self._stage

    @property
    def rounds_completed(self) -> int:
        with self._lock:
            if self._cursor >= len(self._queue):
                return self._round
            return self._round - 1

    def snapshot(self) -> Dict[int, Tuple[int, int, int]]:
        """Copy of the assignment table (position -> (Ω-code, m, n))."""
        with self._lock:
            return dict(self._table)

    def fulfillment_bound(self, r: int, m_max: int, n_max: int, width: int) -> int:
        """A bound K such that every requirement in the box is fulfilled at least ``r`` times below K.

        The box is ``m <= m_max``, ``1 <= n <= n_max``, ``Ω ⊆ {0..width-1}``.
        Each such requirement is serviced in every round from its level on,
        so running ``r`` rounds past the largest level suffices; K is one more
        than the largest position assigned so far.
        """
        if r < 1:
            raise ValueError("r must be positive")
        top = max(m_max, n_max, width)
        self.run_through_round(top + r - 1)
        with self._lock:
            bound = self._max_position + 1
        # positions below the bound must be final as well
        self.ensure(bound)
        return bound

    def first_fulfillment(self, m: int, n: int, omega_set) -> int:
        """The least ``k`` with ``f(m + n*k) = Ω``, running the scheduler as needed."""
        target = encode(omega_set)
        k = 0
        while True:
            p = m + n * k
            if self.code(p) == target:
                return k
            k += 1


def witness_f(state: WitnessF, k: int) -> FiniteOrdinalSet:
    return state(k)


def d_support(f: WitnessF, s) -> FiniteOrdinalSet:
    """``σ_s[f(|s|)]``: the elements of ``s`` at the positions listed by ``f(|s|)``."""
    s = as_set(s)
    return FiniteOrdinalSet._from_sorted(tuple(s[i] for i in f.indices(len(s))))


# -- colourings -----------------------------------------------------------------


@dataclass(frozen=True)
class SetColouring:
    """A colouring of finite ordinal sets; ``colour_space`` None means unbounded."""

    evaluator: Callable[[FiniteOrdinalSet], int]
    colour_space: Optional[int]
    name: str = "anonymous"

    def __call__(self, s) -> int:
        colour = self.evaluator(as_set(s))
        if self.colour_space is not None and not 0 <= colour < self.colour_space:
            raise ColourError(f"{self.name} gave colour {colour} outside range {self.colour_space}")
        return colour


@dataclass(frozen=True)
class ElementColouring:
    evaluator: Callable[[DirectSumElement], int]
    colour_space: Optional[int]
    name: str = "anonymous"

    def __call__(self, x: DirectSumElement) -> int:
        colour = self.evaluator(x)
        if self.colour_space is not None and not 0 <= colour < self.colour_space:
            raise ColourError(f"{self.name} gave colour {colour} outside range {self.colour_space}")
        return colour


def hash_colouring(theta: int, seed: int = 0) -> ElementColouring:
    """A fixed pseudo-random colouring of group elements into ``theta`` colours."""
    if theta < 1:
        raise ValueError("theta must be positive")

    def evaluate(x: DirectSumElement) -> int:
        digest = hashlib.blake2b(f"{seed}|{x.sort_key()}".encode(), digest_size=8).digest()
        return int.from_bytes(digest, "big") % theta

    return ElementColouring(evaluate, theta, f"hash-{theta}-{seed}")


def log_parity(s, m: int = 2) -> int:
    """``floor(log2 |s|) mod m``; the empty set gets colour 0."""
    if m < 1:
        raise ValueError("m must be positive")
    size = len(s)
    if size == 0:
        return 0
    return (size.bit_length() - 1) % m


def log_parity_colouring(m: int = 2) -> SetColouring:
    return SetColouring(lambda s: log_parity(s, m), m, f"log-parity-{m}")


def compose(c: SetColouring, f: WitnessF) -> ElementColouring:
    """``x ↦ c(d(supp x))`` with ``d`` the support colouring of ``f``."""
    return ElementColouring(lambda x: c(d_support(f, x.support())), c.colour_space, f"{c.name}∘d")


def collapse_colouring(d: SetColouring, club) -> SetColouring:
    """``z ↦ d(h[z])`` where ``h(α)`` is the number of elements of ``club`` below ``α``."""
    club = as_set(club)
    return SetColouring(
        lambda z: d(FiniteOrdinalSet(otp_below(club, a) for a in z)),
        d.colour_space,
        f"{d.name}∘h",
    )


# -- sandwich checks ------------------------------------------------------------


def _subsets(items: Sequence) -> Iterator[Tuple]:
    for mask in range(1 << len(items)):
        yield tuple(items[i] for i in range(len(items)) if mask >> i & 1)


def sandwich_values(d: SetColouring, x, y, *, limit: int = SANDWICH_LIMIT) -> set:
    """The set of colours ``d(z)`` over ``x △ y ⊆ z ⊆ x ∪ y``."""
    x, y = as_set(x), as_set(y)
    core = x ^ y
    free = x & y
    if len(free) > limit:
        raise SandwichResourceError(f"|x ∩ y| = {len(free)} exceeds {limit}")
    return {d(core | FiniteOrdinalSet._from_sorted(extra)) for extra in _subsets(free)}


def check_axiom_pair(d: SetColouring, x, y, delta: int, *, limit: int = SANDWICH_LIMIT) -> bool:
    """True iff every sandwich set between ``x △ y`` and ``x ∪ y`` has colour ``delta``."""
    x, y = as_set(x), as_set(y)
    if x == y:
        raise ValueError("the two sets must be distinct")
    core = x ^ y
    free = x & y
    if len(free) > limit:
        raise SandwichResourceError(f"|x ∩ y| = {len(free)} exceeds {limit}")
    return all(d(core | FiniteOrdinalSet._from_sorted(extra)) == delta for extra in _subsets(free))


def _sup(x: FiniteOrdinalSet) -> Ordinal:
    return x.sup()


def star_sandwich(xs: Sequence[FiniteOrdinalSet]) -> Tuple[FiniteOrdinalSet, FiniteOrdinalSet]:
    """(core, union): core holds the elements lying in exactly one ``x_i``."""
    counts: Dict[Ordinal, int] = {}
    for x in xs:
        for a in x:
            counts[a] = counts.get(a, 0) + 1
    union = FiniteOrdinalSet(counts)
    core = FiniteOrdinalSet(a for a, c in counts.items() if c == 1)
    return core, union


def check_axiom_star_instance(d: SetColouring, families: Sequence[Sequence], delta: int, *, limit: int = SANDWICH_LIMIT):
    """First tuple ``(x_0, ..., x_{n-1})`` (product order) with increasing sups whose sandwich is monochromatic ``delta``."""
    fams = [[as_set(x) for x in fam] for fam in families]
    if len(fams) < 2:
        raise ValueError("need at least two families")
    if any(not fam for fam in fams):
        raise ValueError("families must be nonempty")
    if d.colour_space is not None and not 0 <= delta < d.colour_space:
        return None
    for xs in product(*fams):
        sups = [_sup(x) for x in xs]
        if any(not a < b for a, b in zip(sups, sups[1:])):
            continue
        core, union = star_sandwich(xs)
        free = union - core
        if len(free) > limit:
            raise SandwichResourceError(f"{len(free)} shared elements exceed {limit}")
        if all(d(core | FiniteOrdinalSet._from_sorted(extra)) == delta for extra in _subsets(free)):
            return tuple(xs)
    return None


def sandwich_sets(xs: Sequence, *, limit: int = SANDWICH_LIMIT) -> Iterator[FiniteOrdinalSet]:
    """Every ``z`` with core(xs) ⊆ z ⊆ union(xs)."""
    core, union = star_sandwich([as_set(x) for x in xs])
    free = union - core
    if len(free) > limit:
        raise SandwichResourceError(f"{len(free)} shared elements exceed {limit}")
    for extra in _subsets(free):
        yield core | FiniteOrdinalSet._from_sorted(extra)


# -- pair oracles ----------------------------------------------------------------


def _mix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def _ordinal_key(a: Ordinal) -> int:
    if a.is_natural():
        return a.to_int()
    digest = hashlib.blake2b(str(a).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") | (1 << 63)


def seeded_value(seed: int, a: Ordinal, b: Ordinal, modulus: int) -> int:
    """Deterministic pseudo-random value in ``[0, modulus)`` for the pair ``{a, b}``."""
    h = _mix64(seed & 0xFFFFFFFFFFFFFFFF)
    h = _mix64(h ^ _ordinal_key(a))
    h = _mix64(h ^ _ordinal_key(b))
    return h % modulus


@dataclass(frozen=True)
class PairOracle:
    """A symmetric function on pairs of distinct ordinals.

    The evaluator always receives ``(α, β)`` with ``α < β``.
    """

    evaluator: Callable[[Ordinal, Ordinal], int]
    kind: str
    name: str = "anonymous"
    params: Mapping = field(default_factory=dict)

    def __call__(self, a: OrdinalLike, b: OrdinalLike) -> int:
        a, b = ordinal(a), ordinal(b)
        if a == b:
            raise OracleDomainError("pair oracles take two distinct ordinals")
        if b < a:
            a, b = b, a
        return self.evaluator(a, b)

    @classmethod
    def from_table(cls, table: Mapping, name: str = "table") -> "PairOracle":
        clean: Dict[Tuple[Ordinal, Ordinal], int] = {}
        for (a, b), v in table.items():
            a, b = ordinal(a), ordinal(b)
            if a == b:
                raise OracleDomainError("diagonal entry in pair table")
            key = (a, b) if a < b else (b, a)
            if key in clean and clean[key] != v:
                raise OracleDomainError(f"conflicting entries for {key[0]}, {key[1]}")
            clean[key] = int(v)

        def lookup(a, b):
            try:
                return clean[(a, b)]
            except KeyError:
                raise OracleDomainError(f"pair ({a}, {b}) not in the table") from None

        return cls(lookup, "table", name, {"size": len(clean)})

    @classmethod
    def seeded(cls, seed: int, modulus: int, name: str = "seeded") -> "PairOracle":
        if modulus < 1:
            raise ValueError("modulus must be positive")
        return cls(lambda a, b: seeded_value(seed, a, b, modulus), "seeded-mixing", name, {"seed": seed, "modulus": modulus})


def derive_pair_colouring(d: SetColouring) -> PairOracle:
    """``c(α, β) := d({α, β})``."""
    return PairOracle(lambda a, b: d(FiniteOrdinalSet._from_sorted((a, b))), "derived", f"pairs({d.name})")


def _argmax_pairs(oracle: PairOracle, z: FiniteOrdinalSet, key: Callable[[int], int] = lambda v: v):
    """Least pair (lexicographic) among those of ``[z]^2`` maximizing ``key(oracle)``; None if |z| < 2."""
    best_value = None
    best_pair = None
    for a, b in combinations(z, 2):
        v = key(oracle(a, b))
        if best_value is None or v > best_value:
            best_value, best_pair = v, (a, b)
    return best_pair


# pairing between colours and (colour, level) pairs


def _diagonal_size(total: int, theta: Optional[int], chi: Optional[int]) -> int:
    lo = 0 if theta is None else max(0, total - theta + 1)
    hi = total if chi is None else min(total, chi - 1)
    return max(0, hi - lo + 1)


def pair_decode(gamma: int, theta: Optional[int], chi: Optional[int]) -> Tuple[int, int]:
    """``π(γ) = (δ, ε)``: the γ-th pair of ``θ × χ`` ordered by ``(δ + ε, ε)``.

    None stands for an infinite factor; with both infinite this is the Cantor
    pairing.
    """
    if gamma < 0:
        raise ValueError("colours are natural numbers")
    if theta is not None and chi is not None and gamma >= theta * chi:
        raise OracleDomainError(f"colour {gamma} outside {theta}·{chi}")
    if theta is None and chi is None:
        w = (math.isqrt(8 * gamma + 1) - 1) // 2
        eps = gamma - w * (w + 1) // 2
        return w - eps, eps
    total = 0
    while True:
        size = _diagonal_size(total, theta, chi)
        if gamma < size:
            lo = 0 if theta is None else max(0, total - theta + 1)
            eps = lo + gamma
            return total - eps, eps
        gamma -= size
        total += 1


def pair_encode(delta: int, eps: int, theta: Optional[int], chi: Optional[int]) -> int:
    """Inverse of :func:`pair_decode`."""
    if delta < 0 or eps < 0 or (theta is not None and delta >= theta) or (chi is not None and eps >= chi):
        raise OracleDomainError(f"({delta}, {eps}) outside {theta}×{chi}")
    total = delta + eps
    if theta is None and chi is None:
        return total * (total + 1) // 2 + eps
    gamma = sum(_diagonal_size(t, theta, chi) for t in range(total))
    lo = 0 if theta is None else max(0, total - theta + 1)
    return gamma + eps - lo


def d_from_pr1(c: PairOracle, theta: Optional[int], chi: Optional[int], z) -> int:
    """Colour of ``z`` read off the pair of ``[z]^2`` with the largest second π-coordinate.

    Among those pairs the lexicographically least one is used; ``|z| <= 1``
    gives 0.
    """
    z = as_set(z)
    pair = _argmax_pairs(c, z, key=lambda v: pair_decode(v, theta, chi)[1])
    if pair is None:
        return 0
    return pair_decode(c(*pair), theta, chi)[0]


def pr1_colouring(c: PairOracle, theta: int, chi: Optional[int]) -> SetColouring:
    return SetColouring(lambda z: d_from_pr1(c, theta, chi, z), theta, f"pr1({c.name})")


# oscillation colouring


def two_adic_valuation(n: int) -> int:
    """Largest ι with 2^ι | n; 0 for n == 0."""
    if n == 0:
        return 0
    return (n & -n).bit_length() - 1


def psi_mod(alpha: Ordinal, k: int) -> int:
    """``ψ_α(k) = k mod α``, a surjection of ω onto α for natural α > 0; ψ_0 is constantly 0."""
    if not alpha.is_natural():
        raise OracleDomainError(f"ψ is only configured on naturals, got {alpha}")
    a = alpha.to_int()
    return k % a if a else 0


@dataclass(frozen=True)
class DenseFamily:
    """All functions ``U → {0..width-1}``, enumerated by base-``width`` digits.

    ``f_ι(u_j)`` is digit ``j`` of ``ι`` where ``u_0 < u_1 < ...`` lists ``U``;
    indices beyond ``width**|U|`` wrap around, and ``f_ι`` is 0 off ``U``.
    Every function on every subset of ``U`` is therefore realized.
    """

    domain: FiniteOrdinalSet
    width: int

    def __post_init__(self):
        object.__setattr__(self, "domain", as_set(self.domain))
        if self.width < 1:
            raise ValueError("width must be positive")

    def __call__(self, iota: int, alpha: OrdinalLike) -> int:
        alpha = ordinal(alpha)
        if alpha not in self.domain:
            return 0
        j = self.domain.index(alpha)
        return (iota // self.width**j) % self.width

    def index_of(self, values: Mapping) -> int:
        """The least ι whose function agrees with ``values`` (a map from part of ``U``)."""
        iota = 0
        for alpha, v in values.items():
            alpha = ordinal(alpha)
            if alpha not in self.domain or not 0 <= v < self.width:
                raise OracleDomainError(f"cannot realize {alpha} ↦ {v}")
            iota += v * self.width ** self.domain.index(alpha)
        return iota


def d_osc(osc: PairOracle, psi: Callable[[Ordinal, int], int], family: DenseFamily, z) -> int:
    """``ψ_α(f_ι(α))`` for the least osc-maximal pair ``(α, β)`` of ``z``, ι the 2-adic valuation of ``osc(α, β)``."""
    z = as_set(z)
    pair = _argmax_pairs(osc, z)
    if pair is None:
        return 0
    alpha = pair[0]
    iota = two_adic_valuation(osc(*pair))
    return psi(alpha, family(iota, alpha))


def osc_colouring(osc: PairOracle, family: DenseFamily, psi: Callable[[Ordinal, int], int] = psi_mod) -> SetColouring:
    return SetColouring(lambda z: d_osc(osc, psi, family, z), None, f"osc({osc.name})")


def choose_shift(top: int, eps: int, iota: int) -> int:
    """The least ``m > eps`` making ι exactly the 2-adic valuation of ``top + m``.

    The result is below ``eps + 1 + 2**(iota + 1)``.
    """
    period = 1 << (iota + 1)
    return eps + 1 + ((1 << iota) - (top + eps + 1)) % period


def make_synthetic_osc(
    a: Sequence,
    bs: Union[Sequence[Sequence], Mapping[int, Sequence]],
    base: Sequence[Sequence[int]],
    seed: int,
    eps: int,
) -> PairOracle:
    """An oscillation-like oracle with ``osc(a(i), b_m(j)) = base[i][j] + m``.

    Pairs outside ``a × b_m`` get seeded values in ``[0, eps]``.  Blocks must be
    pairwise disjoint and every ``b_m`` must lie above ``a``.  ``bs`` may be a
    mapping ``m -> b_m`` when only some of the blocks are materialized.
    """
    a = tuple(as_set(a))
    shifted = bs.items() if isinstance(bs, Mapping) else enumerate(bs)
    shifts = [(m, tuple(as_set(b))) for m, b in shifted]
    blocks = [b for _, b in shifts]
    if not a or not blocks:
        raise ValueError("need a nonempty block a and at least one b block")
    if any(len(b) != len(blocks[0]) for b in blocks):
        raise ValueError("b blocks must have equal size")
    if len(base) != len(a) or any(len(row) != len(blocks[0]) for row in base):
        raise ValueError("base values must form an |a| × |b| table")
    seen = set(a)
    for b in blocks:
        if seen.intersection(b):
            raise ValueError("blocks overlap")
        seen.update(b)
        if not a[-1] < b[0]:
            raise ValueError("every b block must lie above a")
    designated: Dict[Tuple[Ordinal, Ordinal], int] = {}
    for m, b in shifts:
        for i, alpha in enumerate(a):
            for j, beta in enumerate(b):
                designated[(alpha, beta)] = base[i][j] + m

    def evaluate(x, y):
        v = designated.get((x, y))
        if v is not None:
            return v
        return seeded_value(seed, x, y, eps + 1)

    return PairOracle(evaluate, "synthetic-oscillation", "synthetic-osc", {"seed": seed, "eps": eps})


# entangled orders


@dataclass(frozen=True)
class EntangledInstance:
    """Finite data for the entangled-order colouring.

    ``order`` lists the points of L in ◁-increasing order.  ``maps[α]`` is the
    sequence ``l_α(0), l_α(1), ...``; ``strings[α]`` is the 0/1 string ``g_α``.
    """

    order: Tuple
    maps: Mapping[Ordinal, Tuple]
    strings: Mapping[Ordinal, str]

    def __post_init__(self):
        position = {p: i for i, p in enumerate(self.order)}
        if len(position) != len(self.order):
            raise ValueError("points of L must be distinct")
        maps = {ordinal(k): tuple(v) for k, v in self.maps.items()}
        strings = {ordinal(k): str(v) for k, v in self.strings.items()}
        used = set()
        for k, image in maps.items():
            if len(set(image)) != len(image):
                raise ValueError(f"l_{k} is not injective")
            if any(p not in position for p in image):
                raise ValueError(f"l_{k} leaves L")
            if used.intersection(image):
                raise ValueError("images of the l-maps must be pairwise disjoint")
            used.update(image)
        lengths = {len(s) for s in strings.values()}
        if len(lengths) > 1:
            raise ValueError("g-strings must share a length")
        if len(set(strings.values())) != len(strings):
            raise ValueError("g-strings must be pairwise distinct")
        if any(set(s) - {"0", "1"} for s in strings.values()):
            raise ValueError("g-strings are binary")
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "strings", strings)
        object.__setattr__(self, "_position", position)

    def delta(self, a: Ordinal, b: Ordinal) -> int:
        try:
            ga, gb = self.strings[a], self.strings[b]
        except KeyError as exc:
            raise OracleDomainError(f"no g-string for {exc.args[0]}") from None
        return next(i for i, (u, v) in enumerate(zip(ga, gb)) if u != v)

    def pair_colour(self, a: Ordinal, b: Ordinal) -> int:
        """Least τ with ``l_a(τ) ◁ l_b(τ)`` (for a < b), else 0."""
        try:
            la, lb = self.maps[a], self.maps[b]
        except KeyError as exc:
            raise OracleDomainError(f"no l-map for {exc.args[0]}") from None
        pos = self._position
        for tau, (u, v) in enumerate(zip(la, lb)):
            if pos[u] < pos[v]:
                return tau
        return 0


def d_entangled(instance: EntangledInstance, z) -> int:
    z = as_set(z)
    oracle = PairOracle(instance.delta, "table", "Δ")
    pair = _argmax_pairs(oracle, z)
    if pair is None:
        return 0
    return instance.pair_colour(*pair)
