"""Three-valued interpretations, sub-spaces and two-valued states.

Atom ``i`` of an ordered atom list of length ``n`` is stored in bit
``n - 1 - i`` of an integer, so that sorting states as integers gives the
same order as sorting their rendered strings ("000" < "001" < ...).
A three-valued interpretation is kept as a pair of disjoint masks
``(true_mask, undef_mask)``; every other atom is false.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Sequence

STAR = "⋆"


class TV(IntEnum):
    """Truth value. The integer value is the canonical sort digit (F < T < U)."""

    F = 0
    T = 1
    U = 2

    @property
    def truth_rank(self) -> int:
        # position in the truth order F <t U <t T
        return (0, 2, 1)[self]

    def neg(self) -> "TV":
        return (TV.T, TV.F, TV.U)[self]

    def leq_t(self, other: "TV") -> bool:
        return self.truth_rank <= other.truth_rank

    def leq_s(self, other: "TV") -> bool:
        return self == other or other == TV.U

    @property
    def char(self) -> str:
        return ("0", "1", STAR)[self]

    @property
    def word(self) -> str:
        return ("false", "true", "undefined")[self]


def tv_min(a: TV, b: TV) -> TV:
    return a if a.truth_rank <= b.truth_rank else b


def tv_max(a: TV, b: TV) -> TV:
    return a if a.truth_rank >= b.truth_rank else b


_CHAR_TO_TV = {"0": TV.F, "1": TV.T, STAR: TV.U, "*": TV.U,
               "F": TV.F, "T": TV.T, "U": TV.U}


def bit(n: int, i: int) -> int:
    return 1 << (n - 1 - i)


def state_str(state: int, n: int) -> str:
    return format(state, f"0{n}b") if n else ""


def parse_state(text: str) -> int:
    return int(text, 2) if text else 0


def cell(true_mask: int, undef_mask: int) -> Iterator[int]:
    """Yield the two-valued states inside a sub-space, in increasing order."""
    sub = 0
    while True:
        yield true_mask | sub
        if sub == undef_mask:
            return
        sub = (sub - undef_mask) & undef_mask


def in_cell(state: int, true_mask: int, undef_mask: int) -> bool:
    return state & ~undef_mask == true_mask


def iter_subspaces(n: int) -> Iterator[tuple[int, int]]:
    """Yield all 3^n ``(true_mask, undef_mask)`` pairs."""
    full = (1 << n) - 1
    for undef in range(full + 1):
        yield from ((t, undef) for t in cell(0, full & ~undef))


def subspace_leq(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Knowledge order on mask pairs: cell(a) is a subset of cell(b)."""
    (ta, ua), (tb, ub) = a, b
    return ua & ~ub == 0 and (ta ^ tb) & ~ub == 0


def minimal_subspaces(pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """The knowledge-order-minimal elements of a collection of mask pairs."""
    ordered = sorted(set(pairs), key=lambda p: (p[1].bit_count(), p))
    kept = []
    for p in ordered:
        if not any(subspace_leq(q, p) for q in kept):
            kept.append(p)
    return kept


@dataclass(frozen=True)
class Interpretation:
    """Total map from an ordered atom list to ``TV``.

    Doubles as a Boolean-network sub-space; the two-valued case is a state.
    """

    atoms: tuple
    values: tuple[TV, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.values):
            raise ValueError("atoms and values differ in length")

    @classmethod
    def from_masks(cls, atoms: Sequence, true_mask: int, undef_mask: int) -> "Interpretation":
        n = len(atoms)
        vals = []
        for i in range(n):
            b = bit(n, i)
            vals.append(TV.U if undef_mask & b else TV.T if true_mask & b else TV.F)
        return cls(tuple(atoms), tuple(vals))

    @classmethod
    def from_state(cls, atoms: Sequence, state: int) -> "Interpretation":
        return cls.from_masks(atoms, state, 0)

    @classmethod
    def from_string(cls, atoms: Sequence, text: str) -> "Interpretation":
        return cls(tuple(atoms), tuple(_CHAR_TO_TV[c] for c in text))

    @classmethod
    def from_mapping(cls, atoms: Sequence, mapping) -> "Interpretation":
        """Build from ``{atom: TV}``; atoms missing from the mapping are false."""
        return cls(tuple(atoms), tuple(TV(mapping.get(a, TV.F)) for a in atoms))

    @classmethod
    def all_undefined(cls, atoms: Sequence) -> "Interpretation":
        return cls(tuple(atoms), (TV.U,) * len(atoms))

    @property
    def masks(self) -> tuple[int, int]:
        n = len(self.atoms)
        t = u = 0
        for i, v in enumerate(self.values):
            if v == TV.T:
                t |= bit(n, i)
            elif v == TV.U:
                u |= bit(n, i)
        return t, u

    def __getitem__(self, atom) -> TV:
        return self.values[self.atoms.index(atom)]

    def as_dict(self) -> dict:
        return dict(zip(self.atoms, self.values))

    @property
    def is_two_valued(self) -> bool:
        return TV.U not in self.values

    @property
    def true_atoms(self) -> frozenset:
        return frozenset(a for a, v in zip(self.atoms, self.values) if v == TV.T)

    def states(self) -> Iterator[int]:
        return cell(*self.masks)

    def contains(self, state: int) -> bool:
        return in_cell(state, *self.masks)

    def leq_s(self, other: "Interpretation") -> bool:
        return all(a.leq_s(b) for a, b in zip(self.values, other.values))

    def leq_t(self, other: "Interpretation") -> bool:
        return all(a.leq_t(b) for a, b in zip(self.values, other.values))

    def sort_key(self) -> tuple:
        return tuple(self.values)

    def render(self) -> str:
        """Sub-space string such as ``01⋆``."""
        return "".join(v.char for v in self.values)

    def pretty(self) -> str:
        """Set notation such as ``{p = T, q = F, r = U}``."""
        body = ", ".join(f"{a} = {v.name}" for a, v in zip(self.atoms, self.values))
        return "{" + body + "}"

    def __str__(self) -> str:
        return self.render()


def sort_interpretations(items) -> list:
    return sorted(items, key=Interpretation.sort_key)
