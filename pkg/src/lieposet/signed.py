"""Posets on {-n..-1, 1..n} used for the classical types B, C and D."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .poset import Poset, PosetError, _close

VARIANTS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class Violation:
    condition: int
    elements: tuple[int, ...]

    def __str__(self) -> str:
        return f"condition {self.condition} fails at {self.elements}"


@dataclass(frozen=True)
class SignedPoset:
    """A strict order on the labels ``-n..-1, 1..n``.

    ``less`` is indexed by :meth:`position`, which lists labels in increasing
    integer order.  Construction only checks acyclicity; use
    :func:`validate_signed` for the type-specific conditions.
    """

    n: int
    less: tuple[tuple[bool, ...], ...] = field(repr=False)
    variant: str = "C"

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise PosetError(f"unknown variant {self.variant!r}")
        if self.n < 1 or len(self.less) != 2 * self.n:
            raise PosetError("relation table has the wrong shape")

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]], variant: str = "C") -> "SignedPoset":
        if not isinstance(n, int) or n < 1:
            raise PosetError("n must be a positive integer")
        labels = cls.labels_for(n)
        idx = {x: k for k, x in enumerate(labels)}
        zero = []
        for a, b in pairs:
            if a not in idx or b not in idx:
                raise PosetError(f"relation ({a}, {b}) uses a label outside +-1..{n}")
            zero.append((idx[a], idx[b]))
        rel = _close(2 * n, zero)
        return cls(n, tuple(tuple(r) for r in rel), variant)

    @staticmethod
    def labels_for(n: int) -> tuple[int, ...]:
        return tuple(range(-n, 0)) + tuple(range(1, n + 1))

    @property
    def labels(self) -> tuple[int, ...]:
        return self.labels_for(self.n)

    def position(self, label: int) -> int:
        return label + self.n if label < 0 else label + self.n - 1

    def lt(self, a: int, b: int) -> bool:
        return self.less[self.position(a)][self.position(b)]

    def le(self, a: int, b: int) -> bool:
        return a == b or self.lt(a, b)

    @cached_property
    def relations(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, b) for a in self.labels for b in self.labels if self.lt(a, b))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (a, b) for a, b in self.relations if not any(self.lt(a, c) and self.lt(c, b) for c in self.labels)
        )

    def to_poset(self) -> Poset:
        """The same order as an ordinary poset on ``1..2n`` (label order kept)."""
        return Poset.from_relations(2 * self.n, [(self.position(a) + 1, self.position(b) + 1) for a, b in self.relations])

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers], "variant": self.variant}

    @classmethod
    def from_json(cls, data: Mapping) -> "SignedPoset":
        try:
            return cls.from_relations(data["n"], [tuple(c) for c in data["covers"]], data.get("variant", "C"))
        except (KeyError, TypeError) as exc:
            raise PosetError(f"malformed signed poset JSON: {exc}") from exc


def validate_signed(p: SignedPoset, variant: str | None = None) -> list[Violation]:
    """Every violated instance of the conditions a type-B/C/D poset must meet.

    1. natural labeling, 2. transitivity, 3. ``i <= j`` iff ``-j <= -i``,
    4. (types B and D only) ``i <= j`` forces ``-j`` not below or equal ``i``.
    """
    variant = variant or p.variant
    out: list[Violation] = []
    labs = p.labels
    for a in labs:
        for b in labs:
            if p.lt(a, b) and b < a:
                out.append(Violation(1, (a, b)))
    for a in labs:
        for b in labs:
            if not p.lt(a, b):
                continue
            for c in labs:
                if p.lt(b, c) and not p.lt(a, c):
                    out.append(Violation(2, (a, b, c)))
    for a in labs:
        for b in labs:
            if a != -b and a != b and p.lt(a, b) != p.lt(-b, -a):
                out.append(Violation(3, (a, b)))
    if variant in ("B", "D"):
        for a in labs:
            for b in labs:
                if p.le(a, b) and p.le(-b, a):
                    out.append(Violation(4, (a, b)))
    return out


def hexagon_bcd() -> SignedPoset:
    """-1 < 2, 3;  -2 < 1, 3;  -3 < 1, 2."""
    pairs = [(-1, 2), (-1, 3), (-2, 1), (-2, 3), (-3, 1), (-3, 2)]
    return SignedPoset.from_relations(3, pairs, "C")
