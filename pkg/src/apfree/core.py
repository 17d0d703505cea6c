"""Domain types, pattern detectors and witness verifiers.

A :class:`NaturalSet` is a finite strictly increasing set of positive
integers, a :class:`PointSet` a finite set of lattice points in the positive
quadrant.  The detectors :func:`find_ap` and :func:`find_grid` return
deterministic witnesses that :func:`verify_ap_witness` and
:func:`verify_grid_witness` can re-check by plain membership.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from . import _backend

#: Largest value any element or coordinate may take (signed 64-bit).
MAX_INT = 2**63 - 1


class DomainError(ValueError):
    """Invalid parameter or precondition violation."""


class FormatError(ValueError):
    """Malformed text input; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def _check_int(value: int, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{what} must be an int, got {type(value).__name__}")
    if value < 1:
        raise DomainError(f"{what} must be positive, got {value}")
    if value > MAX_INT:
        raise OverflowError(f"{what}={value} exceeds the 64-bit range")
    return value


@dataclass(frozen=True)
class NaturalSet:
    elements: tuple[int, ...] = ()
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        for e in elements:
            _check_int(e, "element")
        for prev, cur in zip(elements, elements[1:]):
            if cur <= prev:
                raise DomainError(f"elements must be strictly increasing ({prev} then {cur})")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_members", frozenset(elements))

    @classmethod
    def of(cls, values: Iterable[int]) -> "NaturalSet":
        """Build from any iterable, sorting and dropping duplicates."""
        return cls(tuple(sorted(set(values))))

    def __contains__(self, value) -> bool:
        return value in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def shifted(self, t: int) -> "NaturalSet":
        return NaturalSet(tuple(e + t for e in self.elements))

    def to_text(self) -> str:
        return "".join(f"{e}\n" for e in self.elements)

    @classmethod
    def from_text(cls, text: str) -> "NaturalSet":
        values = []
        for lineno, line in _data_lines(text):
            try:
                value = int(line)
            except ValueError:
                raise FormatError(f"expected a positive integer, got {line!r}", lineno) from None
            if str(value) != line or value < 1:
                raise FormatError(f"expected a positive integer, got {line!r}", lineno)
            if value > MAX_INT:
                raise FormatError(f"{value} exceeds the 64-bit range", lineno)
            if values and value <= values[-1]:
                raise FormatError(f"not strictly increasing ({values[-1]} then {value})", lineno)
            values.append(value)
        return cls(tuple(values))


@dataclass(frozen=True)
class PointSet:
    """Finite set of points ``(x, y)`` with positive coordinates."""

    points: frozenset = frozenset()

    def __post_init__(self):
        pts = frozenset((x, y) for x, y in self.points)
        for x, y in pts:
            _check_int(x, "x coordinate")
            _check_int(y, "y coordinate")
        object.__setattr__(self, "points", pts)

    def __contains__(self, point) -> bool:
        return point in self.points

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.points)

    def sorted(self) -> list[tuple[int, int]]:
        """Points in lexicographic ``(x, y)`` order."""
        return sorted(self.points)

    def row_major(self) -> list[tuple[int, int]]:
        """Points ordered by ``(y, x)``."""
        return sorted(self.points, key=lambda p: (p[1], p[0]))

    def shifted(self, tx: int, ty: int) -> "PointSet":
        return PointSet(frozenset((x + tx, y + ty) for x, y in self.points))

    def to_text(self) -> str:
        return "".join(f"{x} {y}\n" for x, y in self.sorted())

    @classmethod
    def from_text(cls, text: str) -> "PointSet":
        points = []
        for lineno, line in _data_lines(text):
            parts = line.split(" ")
            if len(parts) != 2:
                raise FormatError(f"expected 'x y', got {line!r}", lineno)
            try:
                x, y = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError(f"expected two positive integers, got {line!r}", lineno) from None
            if f"{x} {y}" != line or x < 1 or y < 1:
                raise FormatError(f"expected two positive integers, got {line!r}", lineno)
            if x > MAX_INT or y > MAX_INT:
                raise FormatError("coordinate exceeds the 64-bit range", lineno)
            if points and (x, y) <= points[-1]:
                raise FormatError(f"points not sorted or duplicated at ({x}, {y})", lineno)
            points.append((x, y))
        return cls(frozenset(points))


def _data_lines(text: str):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, line in enumerate(lines, start=1):
        if line.endswith("\r"):
            raise FormatError("CR line endings are not accepted", lineno)
        if not line:
            raise FormatError("empty line", lineno)
        yield lineno, line


@dataclass(frozen=True)
class ApWitness:
    start: int
    diff: int
    length: int

    def __post_init__(self):
        _check_int(self.start, "start")
        _check_int(self.diff, "diff")
        if self.length < 3:
            raise DomainError(f"AP length must be >= 3, got {self.length}")
        if self.start + (self.length - 1) * self.diff > MAX_INT:
            raise OverflowError("AP terms exceed the 64-bit range")

    def terms(self) -> list[int]:
        return [self.start + i * self.diff for i in range(self.length)]

    def to_dict(self) -> dict:
        return {"start": self.start, "diff": self.diff, "length": self.length}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ApWitness":
        d = json.loads(text)
        return cls(d["start"], d["diff"], d["length"])


@dataclass(frozen=True)
class GridWitness:
    """The grid ``{(x0 + i*side, y0 + j*side) : 0 <= i, j < size}``."""

    x0: int
    y0: int
    side: int
    size: int

    def __post_init__(self):
        _check_int(self.x0, "x0")
        _check_int(self.y0, "y0")
        _check_int(self.side, "side")
        if self.size < 2:
            raise DomainError(f"grid size must be >= 2, got {self.size}")
        reach = (self.size - 1) * self.side
        if self.x0 + reach > MAX_INT or self.y0 + reach > MAX_INT:
            raise OverflowError("grid corner exceeds the 64-bit range")

    def points(self) -> list[tuple[int, int]]:
        return [
            (self.x0 + i * self.side, self.y0 + j * self.side)
            for j in range(self.size)
            for i in range(self.size)
        ]

    def to_dict(self) -> dict:
        return {"x0": self.x0, "y0": self.y0, "side": self.side, "size": self.size}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "GridWitness":
        d = json.loads(text)
        return cls(d["x0"], d["y0"], d["side"], d["size"])


def find_ap(A: NaturalSet, k: int) -> Optional[ApWitness]:
    """Return the k-term AP in ``A`` with lexicographically least (start, diff), or None."""
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    if len(A) < k:
        return None
    hit = _backend.kernels.find_ap(A.elements, k)
    if hit is None:
        return None
    return ApWitness(hit[0], hit[1], k)


def find_grid(B: PointSet, s: int) -> Optional[GridWitness]:
    """Return the s-by-s grid in ``B`` with least (side, x0, y0), or None."""
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    if len(B) < s * s:
        return None
    hit = _backend.kernels.find_grid(B.row_major(), s)
    if hit is None:
        return None
    x0, y0, side = hit
    return GridWitness(x0, y0, side, s)


def verify_ap_witness(A: NaturalSet, w: ApWitness) -> bool:
    return all(t in A for t in w.terms())


def verify_grid_witness(B: PointSet, w: GridWitness) -> bool:
    return all(p in B for p in w.points())
