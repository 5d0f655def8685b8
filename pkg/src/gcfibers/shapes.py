"""Flag shapes and eigenvalue spectra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ShapeError


@dataclass(frozen=True)
class FlagShape:
    """Dimensions ``0 < n_1 < ... < n_r < n`` of a partial flag."""

    breaks: tuple[int, ...]
    total: int

    def __post_init__(self):
        breaks = tuple(int(b) for b in self.breaks)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "total", int(self.total))
        if not breaks:
            raise ShapeError("a flag shape needs at least one break")
        if breaks[0] <= 0:
            raise ShapeError(f"breaks must be positive: {breaks}")
        if any(a >= b for a, b in zip(breaks, breaks[1:])):
            raise ShapeError(f"breaks must be strictly increasing: {breaks}")
        if breaks[-1] >= self.total:
            raise ShapeError(f"last break {breaks[-1]} must be < n = {self.total}")

    @property
    def r(self) -> int:
        return len(self.breaks)

    @property
    def n(self) -> int:
        return self.total

    def padded(self) -> tuple[int, ...]:
        """``(n_0, n_1, ..., n_r, n_{r+1}) = (0, ..., n)``."""
        return (0,) + self.breaks + (self.total,)

    def block_sizes(self) -> tuple[int, ...]:
        p = self.padded()
        return tuple(b - a for a, b in zip(p, p[1:]))

    @classmethod
    def parse(cls, text: str) -> "FlagShape":
        """Parse ``"n_1,...,n_r:n"``."""
        try:
            head, tail = text.split(":")
            breaks = tuple(int(t) for t in head.split(",") if t.strip())
            return cls(breaks, int(tail))
        except ValueError as exc:
            raise ShapeError(f"cannot parse shape {text!r}: expected 'a,b,...:n'") from exc

    def __str__(self):
        return ",".join(map(str, self.breaks)) + ":" + str(self.total)


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise ShapeError("spectrum entries must be exact (int, Fraction or 'p/q' string)")
    return Fraction(v)


@dataclass(frozen=True)
class Spectrum:
    """A non-increasing sequence of exact rationals with at least two values."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(_to_fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise ShapeError("a spectrum needs at least two entries")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ShapeError(f"spectrum must be non-increasing: {[str(v) for v in vals]}")
        if vals[0] == vals[-1]:
            raise ShapeError("spectrum needs at least two distinct values")

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        """One-based access, matching ``lambda_i``."""
        if not 1 <= i <= len(self.values):
            raise IndexError(i)
        return self.values[i - 1]

    @property
    def shape(self) -> FlagShape:
        breaks = tuple(k for k in range(1, self.n) if self.values[k - 1] > self.values[k])
        return FlagShape(breaks, self.n)

    @classmethod
    def of(cls, values: Iterable) -> "Spectrum":
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "Spectrum":
        try:
            return cls(tuple(Fraction(t.strip()) for t in text.split(",") if t.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ShapeError(f"cannot parse spectrum {text!r}") from exc

    def __str__(self):
        return ",".join(str(v) for v in self.values)


def monotone_spectrum(shape: FlagShape) -> Spectrum:
    """The spectrum with ``c_1 = [omega]`` and zero trace shift.

    Block ``k`` (1-based, ``k <= r``) carries ``n - n_{k-1} - n_k``; the last
    block carries ``-n_r``.
    """
    p = shape.padded()
    n = shape.n
    values = []
    for k in range(1, shape.r + 2):
        size = p[k] - p[k - 1]
        v = -p[shape.r] if k == shape.r + 1 else n - p[k - 1] - p[k]
        values.extend([v] * size)
    return Spectrum(tuple(values))


def is_monotone(spectrum: Spectrum) -> bool:
    return spectrum == monotone_spectrum(spectrum.shape)
