"""Ordinals below epsilon_0 in Cantor normal form, and finite sets of them.

Both types subclass ``tuple`` so that ordering, hashing and equality run at C
speed.  An :class:`Ordinal` is the tuple of its CNF terms ``(exponent,
coefficient)`` with strictly decreasing exponents; lexicographic tuple
comparison on that representation coincides with the ordinal order, which is
why no rich-comparison methods are overridden.

The canonical text form is ``w^e*c+...``:

>>> str(Ordinal.parse("w^2+w*3+7"))
'w^2+w*3+7'
>>> str(omega() + 1)
'w+1'
>>> str(1 + omega())
'w'
"""

from __future__ import annotations

import bisect
import re
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "DEFAULT_MAX_DEPTH",
    "FiniteOrdinalSet",
    "Ordinal",
    "OrdinalDomainError",
    "OrdinalError",
    "add",
    "cmp",
    "is_head_tail_tail",
    "nat",
    "omega",
    "ordinal",
    "otp_below",
    "sigma",
    "sigma_inverse",
]

DEFAULT_MAX_DEPTH = 4


class OrdinalError(ValueError):
    """Malformed ordinal text or an ordinal outside the configured universe."""


class OrdinalDomainError(ValueError):
    """Index or element outside the domain of an order-isomorphism."""


class Ordinal(tuple):
    __slots__ = ()

    def __new__(cls, terms: Iterable = (), *, max_depth: int = DEFAULT_MAX_DEPTH):
        checked = []
        for term in terms:
            exponent, coefficient = term
            exponent = ordinal(exponent)
            if not isinstance(coefficient, int) or isinstance(coefficient, bool) or coefficient < 1:
                raise OrdinalError(f"coefficient must be a positive integer, got {coefficient!r}")
            if checked and not exponent < checked[-1][0]:
                raise OrdinalError("exponents must be strictly decreasing")
            checked.append((exponent, coefficient))
        result = tuple.__new__(cls, checked)
        if result.depth() > max_depth:
            raise OrdinalError(f"ordinal nesting depth {result.depth()} exceeds {max_depth}")
        return result

    @classmethod
    def _make(cls, terms) -> "Ordinal":
        return tuple.__new__(cls, terms)

    # -- structure --------------------------------------------------------

    def is_natural(self) -> bool:
        return not self or (len(self) == 1 and not self[0][0])

    def to_int(self) -> int:
        if not self.is_natural():
            raise OrdinalError(f"{self} is not a natural number")
        return self[0][1] if self else 0

    def depth(self) -> int:
        if not self:
            return 0
        return 1 + max(e.depth() for e, _ in self)

    def leading_exponent(self) -> "Ordinal":
        return self[0][0] if self else ZERO

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = nat(other)
        elif not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        if isinstance(other, int):
            return add(nat(other), self)
        return NotImplemented

    def __mul__(self, other):
        return NotImplemented

    __rmul__ = __mul__

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self:
            return "0"
        return "+".join(_format_term(e, c) for e, c in self)

    def __repr__(self) -> str:
        return f"Ordinal('{self}')"

    @classmethod
    def parse(cls, text: str, *, max_depth: int = DEFAULT_MAX_DEPTH) -> "Ordinal":
        result = _Parser(text).parse()
        if result.depth() > max_depth:
            raise OrdinalError(f"ordinal nesting depth {result.depth()} exceeds {max_depth}")
        return result


def _format_term(exponent: Ordinal, coefficient: int) -> str:
    if not exponent:
        return str(coefficient)
    if exponent.is_natural():
        e = exponent.to_int()
        head = "w" if e == 1 else f"w^{e}"
    else:
        head = f"w^({exponent})"
    return head if coefficient == 1 else f"{head}*{coefficient}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class _Parser:
    def __init__(self, text: str):
        if not isinstance(text, str):
            raise OrdinalError(f"expected a string, got {type(text).__name__}")
        self.tokens = [int(n) if n else s for n, s in _TOKEN.findall(text.strip())]
        if not self.tokens:
            raise OrdinalError(f"malformed ordinal {text!r}")
        self.text = text
        self.pos = 0

    def fail(self):
        raise OrdinalError(f"malformed ordinal {self.text!r}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        token = self.peek()
        self.pos += 1
        return token

    def parse(self) -> Ordinal:
        value = self.sum()
        if self.pos != len(self.tokens):
            self.fail()
        return value

    def sum(self) -> Ordinal:
        value = self.term()
        while self.peek() == "+":
            self.take()
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        token = self.take()
        if isinstance(token, int):
            return nat(token)
        if token != "w":
            self.fail()
        exponent = ONE
        if self.peek() == "^":
            self.take()
            token = self.take()
            if isinstance(token, int):
                exponent = nat(token)
            elif token == "w":
                exponent = OMEGA
            elif token == "(":
                exponent = self.sum()
                if self.take() != ")":
                    self.fail()
            else:
                self.fail()
        coefficient = 1
        if self.peek() == "*":
            self.take()
            token = self.take()
            if not isinstance(token, int):
                self.fail()
            coefficient = token
        if coefficient == 0:
            self.fail()
        return Ordinal._make(((exponent, coefficient),))


@lru_cache(maxsize=65536)
def nat(n: int) -> Ordinal:
    """The finite ordinal ``n``."""
    if n < 0:
        raise OrdinalError(f"negative ordinal {n}")
    return Ordinal._make(((ZERO, n),)) if n else ZERO


ZERO = Ordinal._make(())
ONE = Ordinal._make(((ZERO, 1),))
OMEGA = Ordinal._make(((ONE, 1),))


def omega(exponent: Union[int, Ordinal] = 1, coefficient: int = 1) -> Ordinal:
    """``w^exponent * coefficient``."""
    return Ordinal(((ordinal(exponent), coefficient),)) if coefficient else ZERO


OrdinalLike = Union[Ordinal, int, str]


def ordinal(value: OrdinalLike) -> Ordinal:
    """Coerce an int, canonical string or Ordinal to an Ordinal."""
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, bool):
        raise OrdinalError("booleans are not ordinals")
    if isinstance(value, int):
        return nat(value)
    if isinstance(value, str):
        return Ordinal.parse(value)
    raise OrdinalError(f"cannot interpret {value!r} as an ordinal")


def cmp(a: OrdinalLike, b: OrdinalLike) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = ordinal(a), ordinal(b)
    return (a > b) - (a < b)


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Ordinal sum ``a + b``; terms of ``a`` below the lead of ``b`` are absorbed."""
    a, b = ordinal(a), ordinal(b)
    if not b:
        return a
    lead, coefficient = b[0]
    kept = [t for t in a if t[0] > lead]
    for e, c in a:
        if e == lead:
            coefficient += c
            break
    return Ordinal._make(kept + [(lead, coefficient)] + list(b[1:]))


class FiniteOrdinalSet(tuple):
    """A finite set of ordinals, stored as its increasing enumeration."""

    __slots__ = ()

    def __new__(cls, elements: Iterable[OrdinalLike] = ()):
        return tuple.__new__(cls, sorted({ordinal(e) for e in elements}))

    @classmethod
    def _from_sorted(cls, elements) -> "FiniteOrdinalSet":
        return tuple.__new__(cls, elements)

    def __contains__(self, item) -> bool:
        item = ordinal(item)
        i = bisect.bisect_left(self, item)
        return i < len(self) and self[i] == item

    def __add__(self, other):
        return NotImplemented

    __mul__ = __rmul__ = __radd__ = __add__

    def union(self, *others: Iterable) -> "FiniteOrdinalSet":
        merged = set(self)
        for other in others:
            merged.update(ordinal(e) for e in other)
        return FiniteOrdinalSet._from_sorted(sorted(merged))

    def intersection(self, other: Iterable) -> "FiniteOrdinalSet":
        other = other if isinstance(other, FiniteOrdinalSet) else FiniteOrdinalSet(other)
        return FiniteOrdinalSet._from_sorted([e for e in self if e in other])

    def difference(self, other: Iterable) -> "FiniteOrdinalSet":
        other = other if isinstance(other, FiniteOrdinalSet) else FiniteOrdinalSet(other)
        return FiniteOrdinalSet._from_sorted([e for e in self if e not in other])

    def symmetric_difference(self, other: Iterable) -> "FiniteOrdinalSet":
        other = other if isinstance(other, FiniteOrdinalSet) else FiniteOrdinalSet(other)
        return self.difference(other).union(other.difference(self))

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __xor__ = symmetric_difference

    def issubset(self, other: Iterable) -> bool:
        other = other if isinstance(other, FiniteOrdinalSet) else FiniteOrdinalSet(other)
        return all(e in other for e in self)

    def issuperset(self, other: Iterable) -> bool:
        other = other if isinstance(other, FiniteOrdinalSet) else FiniteOrdinalSet(other)
        return other.issubset(self)

    def isdisjoint(self, other: Iterable) -> bool:
        other = other if isinstance(other, FiniteOrdinalSet) else FiniteOrdinalSet(other)
        return not any(e in other for e in self)

    def min(self) -> Ordinal:
        if not self:
            raise OrdinalDomainError("min of the empty set")
        return self[0]

    def max(self) -> Ordinal:
        if not self:
            raise OrdinalDomainError("max of the empty set")
        return self[-1]

    def sup(self) -> Ordinal:
        """Supremum; for a finite nonempty set this is the maximum, and sup of the empty set is 0."""
        return self[-1] if self else ZERO

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self)) + "}"

    def __repr__(self) -> str:
        return f"FiniteOrdinalSet({[str(e) for e in self]!r})"

    def to_json(self) -> list:
        return [str(e) for e in self]

    @classmethod
    def from_json(cls, data: Sequence) -> "FiniteOrdinalSet":
        return cls(data)


EMPTY = FiniteOrdinalSet._from_sorted(())


def as_set(value) -> FiniteOrdinalSet:
    return value if isinstance(value, FiniteOrdinalSet) else FiniteOrdinalSet(value)


def otp_below(domain: Iterable[OrdinalLike], alpha: OrdinalLike) -> int:
    """Order type of ``domain ∩ alpha``, i.e. how many members lie below ``alpha``."""
    return bisect.bisect_left(as_set(domain), ordinal(alpha))


def sigma(z: Iterable[OrdinalLike], i: int) -> Ordinal:
    """The ``i``-th element of ``z`` in increasing order."""
    z = as_set(z)
    if not 0 <= i < len(z):
        raise OrdinalDomainError(f"index {i} outside 0..{len(z) - 1}")
    return z[i]


def sigma_inverse(z: Iterable[OrdinalLike], alpha: OrdinalLike) -> int:
    z = as_set(z)
    alpha = ordinal(alpha)
    i = bisect.bisect_left(z, alpha)
    if i == len(z) or z[i] != alpha:
        raise OrdinalDomainError(f"{alpha} is not a member of {z}")
    return i


def is_head_tail_tail(family: Iterable[Iterable[OrdinalLike]], root: Iterable[OrdinalLike]) -> bool:
    """Whether ``family`` is a Δ-system with the given root, of head-tail-tail form.

    Members equal to the root have no tail and make the predicate false.
    """
    members = [as_set(x) for x in family]
    root = as_set(root)
    if len(set(members)) != len(members):
        return False
    tails = []
    for x in members:
        if not root.issubset(x):
            return False
        tail = x.difference(root)
        if not tail:
            return False
        if root and not root[-1] < tail[0]:
            return False
        tails.append(tail)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if members[i].intersection(members[j]) != root:
                return False
            if not (members[i][-1] < tails[j][0] or members[j][-1] < tails[i][0]):
                return False
    return True
