"""Radix-N value system: logic levels, digit/index conversion, inversion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union


@dataclass(frozen=True)
class Radix:
    """Number of logic levels a signal may take. n = 2 is ordinary binary."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"radix must be an integer >= 2, got {self.n!r}")

    def levels(self) -> range:
        return range(self.n)


RadixLike = Union[Radix, int]


def as_radix(r: RadixLike) -> Radix:
    return r if isinstance(r, Radix) else Radix(r)


@dataclass(frozen=True)
class MvValue:
    """One radix-N logic level."""

    value: int
    radix: Radix

    def __post_init__(self):
        if not 0 <= self.value <= self.radix.n - 1:
            raise ValueError(
                f"value {self.value} out of range for radix {self.radix.n}"
            )


def nary_invert(v: MvValue) -> MvValue:
    """Level reflection: maps d to N-1-d within the same radix."""
    return MvValue(v.radix.n - 1 - v.value, v.radix)


def tt_index(digits: Sequence[Union[int, MvValue]], radix: RadixLike) -> int:
    """Positional index of a digit tuple, most-significant digit first.

    digits = (x_{M-1}, ..., x_0) maps to sum of N^j * x_j, the row number
    used throughout for truth tables and decoder outputs. MvValue digits
    must all carry the given radix.
    """
    r = as_radix(radix)
    n = r.n
    if not digits:
        raise ValueError("digit tuple must be nonempty")
    k = 0
    for d in digits:
        if isinstance(d, MvValue):
            if d.radix != r:
                raise ValueError(f"mixed radices: {d.radix.n} vs {n}")
            d = d.value
        if not 0 <= d < n:
            raise ValueError(f"digit {d} out of range for radix {n}")
        k = k * n + d
    return k


def tt_digits(k: int, radix: RadixLike, arity: int) -> tuple[int, ...]:
    """Inverse of tt_index: decompose k into an arity-long MS-first tuple."""
    n = as_radix(radix).n
    if arity < 1:
        raise ValueError("arity must be >= 1")
    if not 0 <= k < n**arity:
        raise ValueError(f"index {k} out of range for {arity} radix-{n} digits")
    out = []
    for _ in range(arity):
        out.append(k % n)
        k //= n
    return tuple(reversed(out))


def mv_tuple(digits: Sequence[int], radix: RadixLike) -> tuple[MvValue, ...]:
    """Wrap plain digits as MvValues, validating the range."""
    r = as_radix(radix)
    return tuple(MvValue(d, r) for d in digits)
