"""Symmetric multi-indices stored as per-direction counts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial, prod


@dataclass(frozen=True, order=True)
class MultiIndex:
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError(f"negative count in {self.counts}")

    @classmethod
    def empty(cls, n: int) -> MultiIndex:
        return cls((0,) * n)

    @classmethod
    def from_indices(cls, n: int, indices) -> MultiIndex:
        counts = [0] * n
        for i in indices:
            if not 0 <= i < n:
                raise IndexError(f"base index {i} out of range for n={n}")
            counts[i] += 1
        return cls(tuple(counts))

    @property
    def n(self) -> int:
        return len(self.counts)

    def __len__(self) -> int:
        return sum(self.counts)

    order = property(__len__)

    def indices(self) -> tuple[int, ...]:
        """Sorted list of base indices, e.g. counts [2,1] -> (0, 0, 1)."""
        out = []
        for mu, c in enumerate(self.counts):
            out.extend([mu] * c)
        return tuple(out)

    def __str__(self) -> str:
        return "[" + "".join(str(i) for i in self.indices()) + "]"


def mi_add(lam: int, multi: MultiIndex) -> MultiIndex:
    if not 0 <= lam < multi.n:
        raise IndexError(f"base index {lam} out of range for n={multi.n}")
    counts = list(multi.counts)
    counts[lam] += 1
    return MultiIndex(tuple(counts))


def mi_factorial(multi: MultiIndex) -> int:
    return prod(factorial(c) for c in multi.counts)


def mi_splits(multi: MultiIndex) -> list[tuple[MultiIndex, MultiIndex]]:
    """All (S, X) with S + X = multi, no multiplicity weights, ordered by S counts."""
    out = []
    for left in product(*(range(c + 1) for c in multi.counts)):
        right = tuple(c - a for c, a in zip(multi.counts, left))
        out.append((MultiIndex(tuple(left)), MultiIndex(right)))
    return out


# raw-tuple helpers used in the inner loops

def counts_add(counts: tuple[int, ...], lam: int) -> tuple[int, ...]:
    return counts[:lam] + (counts[lam] + 1,) + counts[lam + 1:]


def counts_sub(counts: tuple[int, ...], lam: int) -> tuple[int, ...] | None:
    if counts[lam] == 0:
        return None
    return counts[:lam] + (counts[lam] - 1,) + counts[lam + 1:]


def counts_factorial(counts) -> int:
    return prod(factorial(c) for c in counts)


def counts_upto(n: int, max_order: int):
    """Every counts vector of length n with total at most max_order."""
    def rec(prefix, remaining, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for c in range(remaining + 1):
            prefix.append(c)
            yield from rec(prefix, remaining - c, slots - 1)
            prefix.pop()
    return sorted(rec([], max_order, n), key=lambda c: (sum(c), c))


def ordered_multiplicity(counts) -> int:
    """Number of distinct orderings of the multiset: |L|! / L!."""
    return factorial(sum(counts)) // counts_factorial(counts)
