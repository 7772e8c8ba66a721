"""Equivalence relations on a view and one-sided/two-sided congruence closure."""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

import numpy as np

from .monoid import MonoidView


class Kind(enum.Flag):
    PLAIN = 0
    RIGHT = enum.auto()
    LEFT = enum.auto()
    TWO_SIDED = RIGHT | LEFT


def side_kind(side: str | Kind) -> Kind:
    if isinstance(side, Kind):
        return side
    try:
        return {"right": Kind.RIGHT, "left": Kind.LEFT, "two-sided": Kind.TWO_SIDED,
                "both": Kind.TWO_SIDED, "plain": Kind.PLAIN}[side]
    except KeyError:
        raise ValueError(f"unknown side {side!r}") from None


class EqRelation:
    """A partition of ``0..n-1``; ``labels[x]`` is the least element of x's class."""

    __slots__ = ("labels", "kind", "_classes")

    def __init__(self, labels: Sequence[int], kind: Kind = Kind.PLAIN):
        self.labels = tuple(int(v) for v in labels)
        self.kind = kind
        self._classes = None

    @classmethod
    def from_keys(cls, keys: Iterable, kind: Kind = Kind.PLAIN) -> "EqRelation":
        first: dict = {}
        labels = []
        for i, k in enumerate(keys):
            labels.append(first.setdefault(k, i))
        return cls(labels, kind)

    @classmethod
    def from_array_rows(cls, arr: np.ndarray, kind: Kind = Kind.PLAIN) -> "EqRelation":
        """Elements are related when their rows of ``arr`` are identical."""
        arr = np.ascontiguousarray(arr)
        return cls.from_keys((r.tobytes() for r in arr), kind)

    @classmethod
    def identity(cls, n: int, kind: Kind = Kind.TWO_SIDED) -> "EqRelation":
        return cls(range(n), kind)

    @classmethod
    def universal(cls, n: int, kind: Kind = Kind.TWO_SIDED) -> "EqRelation":
        return cls([0] * n, kind)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]],
                     kind: Kind = Kind.PLAIN) -> "EqRelation":
        labels = list(range(n))
        for c in classes:
            c = sorted(c)
            for x in c:
                labels[x] = c[0]
        return cls(labels, kind)

    def __len__(self) -> int:
        return len(self.labels)

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def classes(self) -> list[list[int]]:
        if self._classes is None:
            groups: dict[int, list[int]] = {}
            for x, r in enumerate(self.labels):
                groups.setdefault(r, []).append(x)
            self._classes = [groups[r] for r in sorted(groups)]
        return [list(c) for c in self._classes]

    def class_of(self, x: int) -> list[int]:
        r = self.labels[x]
        return [y for y, s in enumerate(self.labels) if s == r]

    @property
    def num_classes(self) -> int:
        return len(set(self.labels))

    def pairs(self) -> Iterable[tuple[int, int]]:
        for c in self.classes():
            for x in c:
                for y in c:
                    yield (x, y)

    def num_pairs(self) -> int:
        return sum(len(c) ** 2 for c in self.classes())

    def is_identity(self) -> bool:
        return all(r == x for x, r in enumerate(self.labels))

    def is_universal(self) -> bool:
        return all(r == 0 for r in self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, EqRelation) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __le__(self, other: "EqRelation") -> bool:
        """Refinement: every class of self lies inside a class of other."""
        seen: dict[int, int] = {}
        for r, s in zip(self.labels, other.labels):
            if seen.setdefault(r, s) != s:
                return False
        return True

    def meet(self, other: "EqRelation") -> "EqRelation":
        return EqRelation.from_keys(zip(self.labels, other.labels))

    __and__ = meet

    def __repr__(self) -> str:
        return f"EqRelation({self.num_classes} classes of {len(self.labels)}, {self.kind})"

    def right_escape(self, v: MonoidView):
        """First (x, t) with x ~ rep(x) but x*t, rep(x)*t in different classes, else None."""
        lab = np.asarray(self.labels)
        moved = lab[np.asarray(v.table)]
        bad = np.argwhere(moved != moved[lab, :])
        if len(bad):
            return int(bad[0][0]), int(bad[0][1])
        return None

    def left_escape(self, v: MonoidView):
        lab = np.asarray(self.labels)
        moved = lab[np.asarray(v.table)]
        bad = np.argwhere(moved != moved[:, lab])
        if len(bad):
            return int(bad[0][1]), int(bad[0][0])
        return None

    def is_right_congruence(self, v: MonoidView) -> bool:
        return self.right_escape(v) is None

    def is_left_congruence(self, v: MonoidView) -> bool:
        return self.left_escape(v) is None

    def is_congruence(self, v: MonoidView, side: Kind) -> bool:
        ok = True
        if side & Kind.RIGHT:
            ok = ok and self.is_right_congruence(v)
        if side & Kind.LEFT:
            ok = ok and self.is_left_congruence(v)
        return ok


def closure(v: MonoidView, pairs: Iterable[tuple[int, int]], side: Kind | str) -> EqRelation:
    """Least equivalence containing ``pairs`` and closed on the given side(s).

    Union-find with a worklist of merged pairs: whenever x and y are merged,
    x*t and y*t (right) and t*x and t*y (left) are queued for merging.
    """
    side = side_kind(side)
    n = v.order
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = []
    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
            work.append((x, y))
    rows = v.rows if side & Kind.RIGHT else None
    cols = v.cols if side & Kind.LEFT else None
    while work:
        x, y = work.pop()
        for lines in (rows, cols):
            if lines is None:
                continue
            for a, b in zip(lines[x], lines[y]):
                if a == b:
                    continue
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
                    work.append((a, b))
    return EqRelation([find(x) for x in range(n)], side)
