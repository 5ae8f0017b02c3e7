"""Direct sums of the countable divisible groups Q and Z(p^oo).

Coordinates are indexed by :class:`~fsbench.ordinals.Ordinal`.  Rational
coordinate values are :class:`fractions.Fraction`; Prüfer values are
:class:`PruferValue`.  Everything is exact.

Also here: Smith normal form over the integers, the embedding of a finitely
presented abelian group into such a direct sum, and the passage from a finite
commutative cancellative Cayley table to a presentation.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, product
from operator import itemgetter
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .ordinals import FiniteOrdinalSet, Ordinal, OrdinalLike, nat, ordinal

__all__ = [
    "QQ",
    "AbelianPresentation",
    "CayleyTableError",
    "DirectSumElement",
    "GroupSignature",
    "INFINITE_ORDER",
    "Prufer",
    "PruferValue",
    "Rational",
    "SignatureError",
    "add",
    "divide",
    "element_order",
    "embed_fg_abelian",
    "factorize",
    "nmul",
    "semigroup_embedding",
    "semigroup_to_group",
    "smith_normal_form",
    "sum_elements",
    "support",
]

INFINITE_ORDER = math.inf

#: largest Cayley table accepted by :func:`semigroup_to_group`
MAX_TABLE_SIZE = 64


class SignatureError(ValueError):
    """Elements from different direct sums, or a value of the wrong kind."""


class CayleyTableError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


# -- coordinate groups ------------------------------------------------------


@dataclass(frozen=True)
class Rational:
    """The coordinate group Q."""

    def __str__(self):
        return "Q"

    def to_json(self):
        return "Q"


QQ = Rational()


@dataclass(frozen=True)
class Prufer:
    """The coordinate group Z(p^oo)."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __str__(self):
        return f"Z({self.p}^oo)"

    def to_json(self):
        return {"prufer": self.p}


Kind = Union[Rational, Prufer]


def kind_from_json(data) -> Kind:
    if data == "Q":
        return QQ
    if isinstance(data, dict) and set(data) == {"prufer"} and isinstance(data["prufer"], int):
        return Prufer(data["prufer"])
    raise ValueError(f"unknown coordinate kind {data!r}")


def _is_prime(n: int) -> bool:
    if not isinstance(n, int) or n < 2:
        return False
    return all(n % q for q in range(2, math.isqrt(n) + 1))


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    factors: Dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True)
class PruferValue:
    """The class of ``a / p**n`` modulo 1, in lowest terms."""

    p: int
    a: int = 0
    n: int = 0

    def __post_init__(self):
        modulus = self.p**self.n
        if not 0 <= self.a < modulus:
            raise ValueError(f"numerator {self.a} outside [0, {self.p}^{self.n})")
        if self.a == 0 and self.n != 0:
            raise ValueError("zero must be written with exponent 0")
        if self.a and self.a % self.p == 0:
            raise ValueError("Prüfer value is not in lowest terms")

    @classmethod
    def of(cls, p: int, value) -> "PruferValue":
        """Reduce an int, Fraction or "a/b" string modulo 1 into Z(p^oo)."""
        frac = Fraction(value)
        den = frac.denominator
        n = 0
        while den % p == 0:
            den //= p
            n += 1
        if den != 1:
            raise ValueError(f"{value} is not a p-power fraction for p={p}")
        return cls._normal(p, frac.numerator, n)

    @classmethod
    def _normal(cls, p: int, a: int, n: int) -> "PruferValue":
        a %= p**n
        if a == 0:
            return cls(p, 0, 0)
        while a % p == 0:
            a //= p
            n -= 1
        return cls(p, a, n)

    def __bool__(self):
        return self.a != 0

    def __add__(self, other: "PruferValue") -> "PruferValue":
        if not isinstance(other, PruferValue) or other.p != self.p:
            return NotImplemented
        n = max(self.n, other.n)
        a = self.a * self.p ** (n - self.n) + other.a * self.p ** (n - other.n)
        return PruferValue._normal(self.p, a, n)

    def __neg__(self) -> "PruferValue":
        return PruferValue._normal(self.p, -self.a, self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int) -> "PruferValue":
        if not isinstance(k, int):
            return NotImplemented
        return PruferValue._normal(self.p, self.a * k, self.n)

    __rmul__ = __mul__

    def order(self) -> int:
        return self.p**self.n

    def divide(self, k: int) -> "PruferValue":
        """The canonical solution ``v`` of ``k*v == self``: lift by the p-part, then invert the rest."""
        if k < 1:
            raise ValueError("divisor must be positive")
        if not self:
            return self
        j = 0
        while k % self.p == 0:
            k //= self.p
            j += 1
        n = self.n + j
        return PruferValue._normal(self.p, self.a * pow(k, -1, self.p**n), n)

    def as_fraction(self) -> Fraction:
        return Fraction(self.a, self.p**self.n)

    def __str__(self):
        return str(self.as_fraction())


Value = Union[Fraction, PruferValue]


def element_order(v) -> Union[int, float]:
    """Least ``k >= 1`` with ``k*v == 0``, or ``INFINITE_ORDER``."""
    if isinstance(v, PruferValue):
        return v.order()
    return 1 if v == 0 else INFINITE_ORDER


def _value_to_json(v: Value) -> str:
    return str(v)


# -- signatures and elements ------------------------------------------------


class GroupSignature:
    """The sequence of coordinate groups of a direct sum.

    ``default`` (if given) is the kind of every undeclared coordinate, which
    models sums such as the direct sum of kappa copies of Q without listing
    every index.
    """

    __slots__ = ("_coordinates", "default", "_hash")

    def __init__(self, coordinates: Union[Mapping, Iterable] = (), default: Optional[Kind] = None):
        items = coordinates.items() if isinstance(coordinates, Mapping) else coordinates
        self._coordinates = {ordinal(k): v for k, v in items}
        for kind in self._coordinates.values():
            if not isinstance(kind, (Rational, Prufer)):
                raise SignatureError(f"bad coordinate kind {kind!r}")
        self.default = default
        self._hash = None

    @property
    def coordinates(self) -> Dict[Ordinal, Kind]:
        return dict(self._coordinates)

    def kind_at(self, alpha: OrdinalLike) -> Kind:
        kind = self._coordinates.get(ordinal(alpha), self.default)
        if kind is None:
            raise SignatureError(f"coordinate {alpha} is not declared")
        return kind

    def declares(self, alpha: OrdinalLike) -> bool:
        return self.default is not None or ordinal(alpha) in self._coordinates

    def __len__(self):
        return len(self._coordinates)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GroupSignature):
            return NotImplemented
        return self.default == other.default and self._coordinates == other._coordinates

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.default, frozenset(self._coordinates.items())))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._coordinates.items()))
        return f"GroupSignature({{{body}}}, default={self.default})"

    def zero(self) -> "DirectSumElement":
        return DirectSumElement._make(self, {})

    def element(self, entries: Union[Mapping, Iterable] = ()) -> "DirectSumElement":
        return DirectSumElement(self, entries)

    def to_json(self) -> dict:
        data = {"coordinates": [[str(k), v.to_json()] for k, v in sorted(self._coordinates.items())]}
        if self.default is not None:
            data["default"] = self.default.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict) -> "GroupSignature":
        default = data.get("default")
        return cls(
            [(k, kind_from_json(v)) for k, v in data.get("coordinates", [])],
            default=None if default is None else kind_from_json(default),
        )


def coerce_value(kind: Kind, raw) -> Value:
    if isinstance(kind, Rational):
        if isinstance(raw, PruferValue):
            raise SignatureError("Prüfer value at a rational coordinate")
        if isinstance(raw, float):
            raise SignatureError("floating point coordinate values are not allowed")
        return Fraction(raw)
    if isinstance(raw, PruferValue):
        if raw.p != kind.p:
            raise SignatureError(f"value in Z({raw.p}^oo) at a Z({kind.p}^oo) coordinate")
        return raw
    if isinstance(raw, float):
        raise SignatureError("floating point coordinate values are not allowed")
    return PruferValue.of(kind.p, raw)


class DirectSumElement:
    """A finitely supported element of a direct sum.

    ``entries`` maps coordinates to nonzero values and is kept in increasing
    coordinate order.
    """

    __slots__ = ("signature", "entries", "_support", "_hash")

    def __init__(self, signature: GroupSignature, entries: Union[Mapping, Iterable] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean = {}
        for key, raw in items:
            alpha = ordinal(key)
            if alpha in clean:
                raise ValueError(f"coordinate {alpha} given twice")
            value = coerce_value(signature.kind_at(alpha), raw)
            if value:
                clean[alpha] = value
        self.signature = signature
        self.entries = dict(sorted(clean.items(), key=itemgetter(0)))
        self._support = None
        self._hash = None

    @classmethod
    def _make(cls, signature: GroupSignature, entries: dict, *, ordered: bool = True) -> "DirectSumElement":
        self = object.__new__(cls)
        self.signature = signature
        self.entries = entries if ordered else dict(sorted(entries.items(), key=itemgetter(0)))
        self._support = None
        self._hash = None
        return self

    def __getitem__(self, alpha: OrdinalLike) -> Value:
        alpha = ordinal(alpha)
        if alpha in self.entries:
            return self.entries[alpha]
        kind = self.signature.kind_at(alpha)
        return Fraction(0) if isinstance(kind, Rational) else PruferValue(kind.p)

    def support(self) -> FiniteOrdinalSet:
        if self._support is None:
            self._support = FiniteOrdinalSet._from_sorted(tuple(self.entries))
        return self._support

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if not isinstance(other, DirectSumElement):
            return NotImplemented
        return self.entries == other.entries and self.signature == other.signature

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.entries.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, DirectSumElement):
            return NotImplemented
        return add(self, other)

    def __neg__(self):
        return DirectSumElement._make(self.signature, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, DirectSumElement):
            return NotImplemented
        return add(self, -other)

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return nmul(n, self)

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self.entries.items())
        return f"DirectSumElement({{{body}}})"

    def sort_key(self) -> str:
        """Serialization-order key used for deterministic tie-breaking."""
        return ";".join(f"{k}={v}" for k, v in self.entries.items())

    def to_json(self, *, include_signature: bool = True) -> dict:
        data = {"entries": [[str(k), _value_to_json(v)] for k, v in self.entries.items()]}
        if include_signature:
            data = {"sig": self.signature.to_json(), **data}
        return data

    @classmethod
    def from_json(cls, data: dict, signature: Optional[GroupSignature] = None) -> "DirectSumElement":
        if signature is None:
            signature = GroupSignature.from_json(data["sig"])
        return cls(signature, [(k, v) for k, v in data["entries"]])


def _check_same(x: DirectSumElement, y: DirectSumElement) -> None:
    if x.signature is not y.signature and x.signature != y.signature:
        raise SignatureError("elements live in different direct sums")


def add(x: DirectSumElement, y: DirectSumElement) -> DirectSumElement:
    """Coordinatewise sum; coordinates that cancel are dropped."""
    _check_same(x, y)
    result = dict(x.entries)
    fresh = False
    for k, v in y.entries.items():
        if k in result:
            s = result[k] + v
            if s:
                result[k] = s
            else:
                del result[k]
        else:
            result[k] = v
            fresh = True
    return DirectSumElement._make(x.signature, result, ordered=not fresh)


def sum_elements(xs: Iterable[DirectSumElement], signature: Optional[GroupSignature] = None) -> DirectSumElement:
    """n-ary sum accumulated in one pass (the empty sum needs ``signature``).

    The largest summand's entries are already sorted, so only the coordinates
    it lacks are placed by bisection; long sums of many small elements into a
    large one stay cheap.
    """
    xs = list(xs)
    if not xs:
        if signature is None:
            raise ValueError("the empty sum needs a signature")
        return signature.zero()
    sig = xs[0].signature
    for x in xs:
        _check_same(xs[0], x)
    big = max(range(len(xs)), key=lambda i: len(xs[i].entries))
    base = xs[big].entries
    acc: dict = {}
    for i, x in enumerate(xs):
        if i == big:
            continue
        for k, v in x.entries.items():
            acc[k] = acc[k] + v if k in acc else v
    fresh = sorted(k for k in acc if k not in base)
    if fresh:
        keys = list(base)
        items = list(base.items())
        pieces = []
        last = 0
        for k in fresh:
            pos = bisect_left(keys, k, last)
            pieces.append(items[last:pos])
            pieces.append(((k, acc[k]),))
            last = pos
        pieces.append(items[last:])
        result = dict(chain.from_iterable(pieces))
    else:
        result = dict(base)
    for k, v in acc.items():
        total = base[k] + v if k in base else v
        if total:
            result[k] = total
        else:
            del result[k]
    return DirectSumElement._make(sig, result)


def support(x: DirectSumElement) -> FiniteOrdinalSet:
    """The finite set of coordinates where ``x`` is nonzero."""
    return x.support()


def nmul(n: int, x: DirectSumElement) -> DirectSumElement:
    """``n * x`` for a natural number ``n``."""
    if n < 0:
        raise ValueError("nmul takes a natural number")
    entries = {}
    for k, v in x.entries.items():
        w = v * n
        if w:
            entries[k] = w
    return DirectSumElement._make(x.signature, entries)


def divide(n: int, x: DirectSumElement) -> DirectSumElement:
    """The canonical ``z`` with ``nmul(n, z) == x``."""
    if n < 1:
        raise ValueError("divide needs a positive integer")
    entries = {}
    for k, v in x.entries.items():
        entries[k] = v.divide(n) if isinstance(v, PruferValue) else v / n
    return DirectSumElement._make(x.signature, entries)


# -- Smith normal form --------------------------------------------------------


Matrix = List[List[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(a))]


def smith_normal_form(matrix: Sequence[Sequence[int]], cols: Optional[int] = None) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, S, V)`` with ``S == U @ M @ V`` diagonal and ``d1 | d2 | ...``.

    ``U`` and ``V`` are unimodular.  Diagonal entries are nonnegative.  ``cols``
    is only needed for a matrix with no rows.
    """
    rows = len(matrix)
    if cols is None:
        cols = len(matrix[0]) if rows else 0
    s = [[int(v) for v in row] for row in matrix]
    if any(len(row) != cols for row in s):
        raise ValueError("ragged matrix")
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        s[dst] = [a + k * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in s:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if s[i][j] and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            done = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % s[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if pivot is None:
            break
        if s[t][t] < 0:
            s[t] = [-a for a in s[t]]
            u[t] = [-a for a in u[t]]
    return u, s, v


def invariant_factors(matrix: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[int]:
    _, s, _ = smith_normal_form(matrix, cols)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


# -- presentations and the embedding -------------------------------------------


@dataclass(frozen=True)
class AbelianPresentation:
    """``generators`` free generators modulo the integer row span of ``relations``."""

    generators: int
    relations: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.generators < 0:
            raise ValueError("generator count must be nonnegative")
        rel = tuple(tuple(int(v) for v in row) for row in self.relations)
        if any(len(row) != self.generators for row in rel):
            raise ValueError("every relation needs one coefficient per generator")
        object.__setattr__(self, "relations", rel)

    def to_json(self) -> dict:
        return {"generators": self.generators, "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianPresentation":
        return cls(data["generators"], tuple(tuple(r) for r in data.get("relations", [])))


def embed_fg_abelian(presentation: AbelianPresentation) -> Tuple[GroupSignature, List[DirectSumElement]]:
    """Embed a finitely presented abelian group into a direct sum of Q's and Prüfer groups.

    Free invariant factors become fresh Q coordinates (basis element -> 1); a
    torsion factor Z/d splits into its prime powers p^k, each a Z(p^oo)
    coordinate (basis element -> 1/p^k).  Coordinates are numbered 0, 1, ...
    in the order the factors appear.
    """
    g = presentation.generators
    _, s, v = smith_normal_form(presentation.relations, cols=g)
    diagonal = [s[i][i] if i < len(s) else 0 for i in range(g)]

    coordinates: List[Kind] = []
    images_of_basis: List[List[Tuple[int, Value]]] = []
    for d in diagonal:
        if d == 1:
            images_of_basis.append([])
        elif d == 0:
            images_of_basis.append([(len(coordinates), Fraction(1))])
            coordinates.append(QQ)
        else:
            parts = []
            for p, k in sorted(factorize(d).items()):
                parts.append((len(coordinates), PruferValue(p, 1, k)))
                coordinates.append(Prufer(p))
            images_of_basis.append(parts)
    signature = GroupSignature({nat(i): kind for i, kind in enumerate(coordinates)})

    images = []
    for i in range(g):
        acc: Dict[Ordinal, Value] = {}
        for j in range(g):
            coefficient = v[i][j]
            if not coefficient:
                continue
            for index, basis_value in images_of_basis[j]:
                key = nat(index)
                term = basis_value * coefficient
                acc[key] = acc[key] + term if key in acc else term
        images.append(DirectSumElement._make(signature, {k: w for k, w in acc.items() if w}, ordered=False))
    return signature, images


def word_image(images: Sequence[DirectSumElement], word: Sequence[int], signature: GroupSignature) -> DirectSumElement:
    """Image of the integer combination ``sum(word[i] * generator_i)``."""
    acc = signature.zero()
    for coefficient, image in zip(word, images):
        if coefficient > 0:
            acc = add(acc, nmul(coefficient, image))
        elif coefficient < 0:
            acc = add(acc, -nmul(-coefficient, image))
    return acc


def _check_table(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    if n == 0:
        raise CayleyTableError("empty table")
    if n > MAX_TABLE_SIZE:
        raise CayleyTableError(f"table has {n} elements; the limit is {MAX_TABLE_SIZE}")
    for i, row in enumerate(table):
        if len(row) != n or any(not isinstance(e, int) or not 0 <= e < n for e in row):
            raise CayleyTableError(f"row {i} is not a total operation on 0..{n - 1}", (i,))
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise CayleyTableError(f"not commutative: {i}+{j} != {j}+{i}", (i, j))
    for i, j, k in product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise CayleyTableError(f"not associative at ({i}, {j}, {k})", (i, j, k))
    for z in range(n):
        seen: Dict[int, int] = {}
        for x in range(n):
            total = table[x][z]
            if total in seen:
                raise CayleyTableError(
                    f"not cancellative: {seen[total]}+{z} == {x}+{z}", (seen[total], x, z)
                )
            seen[total] = x
    return n


def _lattice_basis(rows: Iterable[Sequence[int]], n: int) -> Matrix:
    """Echelon basis of the integer row span, built by inserting rows one at a time."""
    basis: Dict[int, List[int]] = {}  # pivot column -> row
    for row in rows:
        row = list(row)
        while True:
            lead = next((j for j, a in enumerate(row) if a), None)
            if lead is None:
                break
            if lead not in basis:
                if row[lead] < 0:
                    row = [-a for a in row]
                basis[lead] = row
                break
            b = basis[lead]
            # Euclid on the two leading entries
            while row[lead]:
                q = b[lead] // row[lead]
                b = [x - q * y for x, y in zip(b, row)]
                b, row = row, b
            if b[lead] < 0:
                b = [-a for a in b]
            basis[lead] = b
    return [basis[k] for k in sorted(basis)]


def semigroup_embedding(table: Sequence[Sequence[int]]) -> Tuple[AbelianPresentation, List[Tuple[int, ...]]]:
    """Presentation of a finite commutative cancellative semigroup plus each element's word.

    Such a semigroup is already a group.  Generators are first the elements
    themselves with one relation ``e_i + e_j - e_(i+j)`` per table entry; the
    relation lattice is then reduced by Smith normal form so that the returned
    presentation is diagonal with no trivial factors.  ``words[k]`` expresses
    element ``k`` over the reduced generators.
    """
    n = _check_table(table)
    raw = []
    for i in range(n):
        for j in range(i, n):
            row = [0] * n
            row[i] += 1
            row[j] += 1
            row[table[i][j]] -= 1
            raw.append(row)
    basis = _lattice_basis(raw, n)
    _, s, v = smith_normal_form(basis, cols=n)
    diagonal = [s[i][i] if i < len(s) else 0 for i in range(n)]
    keep = [j for j, d in enumerate(diagonal) if d != 1]
    relations = tuple(tuple(diagonal[j] if jj == idx else 0 for jj in range(len(keep))) for idx, j in enumerate(keep) if diagonal[j] != 0)
    presentation = AbelianPresentation(len(keep), relations)
    words = []
    for k in range(n):
        words.append(tuple(v[k][j] % diagonal[j] if diagonal[j] else v[k][j] for j in keep))
    return presentation, words


def semigroup_to_group(table: Sequence[Sequence[int]]) -> AbelianPresentation:
    """Presentation of the group given by a finite commutative cancellative Cayley table."""
    return semigroup_embedding(table)[0]
