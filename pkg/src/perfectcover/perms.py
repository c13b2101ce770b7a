"""Permutations on the points 0..degree-1.

Composition is fixed package-wide as left-to-right: (p * q)(i) = q(p(i)),
i.e. the left factor acts first.  Conjugation is x ** y = y^-1 * x * y and
the commutator is [x, y] = x^-1 * y^-1 * x * y.  Cycle notation in text is
1-based, matching the group file format.
"""

from __future__ import annotations

import re

from .errors import InputError


class Permutation:
    """An immutable permutation stored as a tuple of point images."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for i in images:
            if not isinstance(i, int) or not 0 <= i < n or seen[i]:
                raise InputError(f"not a permutation of 0..{n - 1}: {images!r}")
            seen[i] = True
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> Permutation:
        """Build from 0-based cycles, e.g. [(0, 1, 2)]."""
        images = list(range(degree))
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < degree:
                    raise InputError(f"point {a} out of range for degree {degree}")
            if len(set(cycle)) != len(cycle):
                raise InputError(f"repeated point in cycle {cycle!r}")
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(self.images) != len(other.images):
            raise InputError("degree mismatch in product")
        o = other.images
        return Permutation(tuple(o[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, by: Permutation) -> Permutation:
        """self ** by = by^-1 * self * by."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        n = 1
        p = self
        while not p.is_identity():
            p = p * self
            n += 1
        return n

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its least point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation):
        return self.images < other.images

    def __le__(self, other: Permutation):
        return self.images <= other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r})"


def commutator(x: Permutation, y: Permutation) -> Permutation:
    """[x, y] = x^-1 y^-1 x y."""
    return x.inverse() * y.inverse() * x * y


def format_cycles(p: Permutation) -> str:
    """1-based cycle notation, '()' for the identity."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as '(1 2 3)(4 5)'."""
    stripped = text.strip()
    if not stripped:
        raise InputError("empty permutation text")
    consumed = 0
    cycles = []
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[consumed:m.start()].strip():
            raise InputError(f"unexpected text in permutation: {text!r}")
        consumed = m.end()
        body = m.group(1).replace(",", " ").split()
        cycle = []
        for token in body:
            try:
                point = int(token)
            except ValueError:
                raise InputError(f"bad point {token!r} in {text!r}") from None
            if not 1 <= point <= degree:
                raise InputError(f"point {point} out of range 1..{degree}")
            cycle.append(point - 1)
        if len(set(cycle)) != len(cycle):
            raise InputError(f"repeated point in cycle ({m.group(1)})")
        cycles.append(tuple(cycle))
    if stripped[consumed:].strip():
        raise InputError(f"unexpected text in permutation: {text!r}")
    return Permutation.from_cycles(degree, cycles)
