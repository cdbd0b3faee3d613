"""Finite-support sequences of nonnegative integers and their combinatorics.

A tangency sequence records, for every contact order k >= 1, how many contacts
of that order a curve has with the boundary divisor.  Everything here is exact
integer arithmetic; sequences are immutable and hashable so they can serve as
memo-table keys.

Wire format (CLI flags, cache files): comma-separated ``k:count`` pairs in
increasing k, e.g. ``1:2,2:1`` for two order-1 contacts and one order-2
contact.  The empty string denotes the zero sequence.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence, Union

SeqLike = Union["TangencySeq", Mapping[int, int], Iterable[tuple[int, int]]]


class TangencySeq:
    """Immutable sparse sequence (a_1, a_2, ...), all but finitely many zero.

    Zero counts are never stored, so two equal sequences have identical
    storage and hashing is structural.
    """

    __slots__ = ("_items",)

    def __init__(self, entries: SeqLike = ()):
        if isinstance(entries, TangencySeq):
            items = entries._items
        else:
            pairs = entries.items() if isinstance(entries, Mapping) else entries
            acc: dict[int, int] = {}
            for k, c in pairs:
                if not isinstance(k, int) or not isinstance(c, int):
                    raise TypeError("tangency entries must be integers")
                if k < 1:
                    raise ValueError(f"contact order must be >= 1, got {k}")
                if c < 0:
                    raise ValueError(f"count for order {k} must be >= 0, got {c}")
                if c:
                    acc[k] = acc.get(k, 0) + c
            items = tuple(sorted(acc.items()))
        self._items: tuple[tuple[int, int], ...]
        object.__setattr__(self, "_items", items)

    def __setattr__(self, name, value):
        raise AttributeError("TangencySeq is immutable")

    # -- basic access -------------------------------------------------------

    def items(self) -> tuple[tuple[int, int], ...]:
        """(k, count) pairs in increasing k, counts all positive."""
        return self._items

    def get(self, k: int) -> int:
        for kk, c in self._items:
            if kk == k:
                return c
        return 0

    __getitem__ = get

    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self._items)

    @property
    def is_zero(self) -> bool:
        return not self._items

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, TangencySeq) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"TangencySeq({self.text()!r})"

    def __str__(self) -> str:
        return self.text() or "0"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "TangencySeq") -> "TangencySeq":
        acc = dict(self._items)
        for k, c in other._items:
            acc[k] = acc.get(k, 0) + c
        return TangencySeq(acc)

    def __sub__(self, other: "TangencySeq") -> "TangencySeq":
        acc = dict(self._items)
        for k, c in other._items:
            r = acc.get(k, 0) - c
            if r < 0:
                raise ValueError(f"subtraction would go negative at order {k}")
            acc[k] = r
        return TangencySeq(acc)

    def __rmul__(self, n: int) -> "TangencySeq":
        if not isinstance(n, int) or n < 0:
            raise ValueError("scalar must be a nonnegative integer")
        return TangencySeq({k: n * c for k, c in self._items})

    def __le__(self, other: "TangencySeq") -> bool:
        """Entrywise dominance (a partial order, not a total one)."""
        return all(c <= other.get(k) for k, c in self._items)

    def __ge__(self, other: "TangencySeq") -> bool:
        return other.__le__(self)

    def min_with(self, other: "TangencySeq") -> "TangencySeq":
        return TangencySeq({k: min(c, other.get(k)) for k, c in self._items})

    # -- the classical functionals ------------------------------------------

    def size(self) -> int:
        """|a| = a_1 + a_2 + ...  (total number of contacts)."""
        return sum(c for _, c in self._items)

    def weight(self) -> int:
        """Ia = a_1 + 2 a_2 + 3 a_3 + ...  (total contact order)."""
        return sum(k * c for k, c in self._items)

    def iexp(self) -> int:
        """I^a = 1^{a_1} 2^{a_2} 3^{a_3} ...; the empty product is 1."""
        out = 1
        for k, c in self._items:
            out *= k**c
        return out

    def factorial(self) -> int:
        """a! = a_1! a_2! a_3! ..."""
        out = 1
        for _, c in self._items:
            out *= math.factorial(c)
        return out

    def binom(self, sub: "TangencySeq") -> int:
        """binom(a; a') = prod_k C(a_k, a'_k); requires a' <= a entrywise."""
        out = 1
        for k, c in sub._items:
            n = self.get(k)
            if c > n:
                raise ValueError(f"binom undefined: order {k} has {c} > {n}")
            out *= math.comb(n, c)
        return out

    def lcm(self) -> int:
        """Least common multiple of the support; undefined for the zero sequence."""
        if not self._items:
            raise ValueError("lcm of the zero sequence is undefined")
        return math.lcm(*(k for k, _ in self._items))

    def branch_count(self) -> int:
        """I^a / lcm(a), the local branch count; always an exact integer."""
        q, r = divmod(self.iexp(), self.lcm())
        assert r == 0, "branch count must be integral"
        return q

    # -- ordering key and wire format ----------------------------------------

    def sort_key(self) -> tuple:
        """Deterministic total-order key (sequences themselves are only partially ordered)."""
        return self._items

    def text(self) -> str:
        """Wire form: ``1:2,2:1``; empty string for the zero sequence."""
        return ",".join(f"{k}:{c}" for k, c in self._items)

    @classmethod
    def parse(cls, text: str) -> "TangencySeq":
        """Inverse of :meth:`text`; also accepts ``-`` as the zero sequence."""
        text = text.strip()
        if text in ("", "-", "0"):
            return ZERO
        pairs = []
        for chunk in text.split(","):
            k, sep, c = chunk.partition(":")
            if not sep:
                raise ValueError(f"malformed sequence entry {chunk!r}")
            try:
                pairs.append((int(k), int(c)))
            except ValueError as exc:
                raise ValueError(f"malformed sequence entry {chunk!r}") from exc
        return cls(pairs)


ZERO = TangencySeq()


def e(k: int) -> TangencySeq:
    """The unit sequence e_k with a single order-k contact."""
    return TangencySeq(((k, 1),))


# -- enumeration -------------------------------------------------------------


def enumerate_leq(a: TangencySeq) -> list[TangencySeq]:
    """All sequences b with 0 <= b <= a entrywise.

    Exactly prod_k (a_k + 1) results, in a deterministic order: counts run
    fastest at the largest order.
    """
    out = [ZERO]
    for k, c in a.items():
        out = [b + TangencySeq(((k, i),)) if i else b for b in out for i in range(c + 1)]
    return out


def enumerate_weight(w: int) -> list[TangencySeq]:
    """All sequences g with Ig = w, i.e. the integer partitions of w.

    Deterministic order: partitions with the largest maximal part first.
    """
    if w < 0:
        return []
    out: list[TangencySeq] = []

    def descend(remaining: int, max_part: int, acc: dict[int, int]):
        if remaining == 0:
            out.append(TangencySeq(acc))
            return
        for part in range(min(remaining, max_part), 0, -1):
            acc[part] = acc.get(part, 0) + 1
            descend(remaining - part, part, acc)
            acc[part] -= 1

    descend(w, w if w else 1, {})
    return out


# -- multinomial helpers ------------------------------------------------------


def multinomial(total: int, parts: Sequence[int]) -> int:
    """total! / prod(parts!); the parts must sum to exactly total."""
    if sum(parts) != total:
        raise ValueError("multinomial parts must sum to the total")
    out, rem = 1, total
    for p in parts:
        out *= math.comb(rem, p)
        rem -= p
    return out


def seq_multinomial(total: TangencySeq, parts: Sequence[TangencySeq]) -> int:
    """prod_k multinomial(total_k; parts_k..., remainder_k).

    The remainder slot is implicit, so the parts may sum to less than the
    total entrywise (but never more).
    """
    out, rem = 1, total
    for p in parts:
        out *= rem.binom(p)
        rem = rem - p
    return out
