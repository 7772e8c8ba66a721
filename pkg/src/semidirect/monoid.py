"""Finite monoids given by Cayley tables, and the common view interface.

Every monoid-like object in the package is a :class:`MonoidView`: it has an
``order``, an ``identity`` index and a ``product``.  Views that fit under the
materialization cap also expose a dense numpy ``table``; the algorithms in
:mod:`semidirect.relations` and :mod:`semidirect.acts` work from that table.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MATERIALIZE_CAP = 4096
# Above this order the cube check is replaced by Light's test over known generators.
ASSOC_CUBE_LIMIT = 512


class MonoidError(ValueError):
    """Input does not describe a monoid (bad shape, axioms, or file syntax)."""


class OutOfRangeError(MonoidError):
    pass


class CapacityError(RuntimeError):
    """A computation was refused because the input exceeds a configured cap."""


@dataclass(frozen=True)
class Violation:
    kind: str  # "identity" or "associativity"
    witness: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return self.message


class MonoidView:
    """Abstract monoid on the indices ``0 .. order-1``.

    Subclasses implement :meth:`product`.  ``table`` is built on first use and
    cached; requesting it above ``materialize_cap`` raises :class:`CapacityError`.
    """

    order: int
    identity: int = 0
    materialize_cap: int = MATERIALIZE_CAP

    def product(self, x: int, y: int) -> int:
        raise NotImplementedError

    def label(self, x: int) -> str:
        return str(x)

    def labels(self) -> list[str]:
        return [self.label(x) for x in range(self.order)]

    def decode(self, x: int):
        return x

    def generators(self) -> list[int] | None:
        """A known generating set (as a semigroup), if the view has one."""
        return None

    def _build_table(self) -> np.ndarray:
        n = self.order
        t = np.empty((n, n), dtype=np.int32)
        for x in range(n):
            for y in range(n):
                t[x, y] = self.product(x, y)
        return t

    @cached_property
    def table(self) -> np.ndarray:
        if self.order > self.materialize_cap:
            raise CapacityError(
                f"view of order {self.order} exceeds materialization cap {self.materialize_cap}"
            )
        t = self._build_table()
        t.setflags(write=False)
        return t

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def cols(self) -> list[list[int]]:
        return self.table.T.tolist()

    def __len__(self) -> int:
        return self.order


class FiniteMonoid(MonoidView):
    """A monoid given by its full Cayley table, identity at index 0."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 check: bool = True):
        rows = [list(map(int, r)) for r in table]
        n = len(rows)
        if n == 0:
            raise MonoidError("a monoid has at least one element")
        for i, r in enumerate(rows):
            if len(r) != n:
                raise MonoidError(f"row {i} has {len(r)} entries, expected {n}")
        if labels is not None:
            labels = [str(s) for s in labels]
            if len(labels) != n:
                raise MonoidError(f"{len(labels)} labels for {n} elements")
        self.order = n
        self._rows = tuple(tuple(r) for r in rows)
        self._labels = tuple(labels) if labels is not None else None
        if check:
            bad = validate(self)
            if bad is not None:
                raise MonoidError(str(bad))

    def product(self, x: int, y: int) -> int:
        return self._rows[x][y]

    def label(self, x: int) -> str:
        if self._labels is None:
            return str(x)
        return self._labels[x]

    @property
    def has_labels(self) -> bool:
        return self._labels is not None

    def _build_table(self) -> np.ndarray:
        return np.array(self._rows, dtype=np.int32)

    @cached_property
    def rows(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteMonoid) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"FiniteMonoid(order={self.order})"

    def with_labels(self, labels: Sequence[str] | None) -> "FiniteMonoid":
        return FiniteMonoid(self._rows, labels, check=False)

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self._rows]


def validate(m: MonoidView, spot_checks: int = 10**6, seed: int = 0) -> Violation | None:
    """Check the monoid axioms; return ``None`` when they hold.

    Out-of-range entries raise :class:`OutOfRangeError` instead of being
    reported as a violation.  Associativity is checked on the full cube up to
    ``ASSOC_CUBE_LIMIT``, by Light's test when the view knows a generating set
    and its table fits the cap, and by ``spot_checks`` random triples otherwise.
    """
    n = m.order
    if n > m.materialize_cap:
        return _validate_lazy(m, spot_checks, seed)
    t = np.asarray(m.table)
    if t.shape != (n, n):
        raise MonoidError(f"table shape {t.shape} is not {n}x{n}")
    if t.size and (t.min() < 0 or t.max() >= n):
        bad = np.argwhere((t < 0) | (t >= n))[0]
        x, y = int(bad[0]), int(bad[1])
        raise OutOfRangeError(f"entry t[{x}][{y}] = {int(t[x, y])} is outside 0..{n - 1}")
    e = m.identity
    idx = np.arange(n)
    for x in idx[(t[e] != idx) | (t[:, e] != idx)]:
        x = int(x)
        return Violation("identity", (e, x),
                         f"identity law fails at {x}: {e}*{x}={int(t[e, x])}, {x}*{e}={int(t[x, e])}")
    gens = m.generators()
    if n <= ASSOC_CUBE_LIMIT or gens is None:
        middles: Iterable[int] = range(n)
    else:
        middles = gens
    for y in middles:
        # (x*y)*z against x*(y*z) for all x, z
        lhs = t[t[:, y], :]
        rhs = t[:, t[y, :]]
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            x, z = int(diff[0][0]), int(diff[0][1])
            return Violation("associativity", (x, y, z),
                             f"associativity fails at ({x},{y},{z}): "
                             f"({x}*{y})*{z}={int(lhs[x, z])} but {x}*({y}*{z})={int(rhs[x, z])}")
    return None


def _validate_lazy(m: MonoidView, spot_checks: int, seed: int) -> Violation | None:
    n, e, p = m.order, m.identity, m.product
    rng = random.Random(seed)
    for _ in range(min(spot_checks, 10 * n)):
        x = rng.randrange(n)
        if p(e, x) != x or p(x, e) != x:
            return Violation("identity", (e, x), f"identity law fails at {x}")
    for _ in range(spot_checks):
        x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if p(p(x, y), z) != p(x, p(y, z)):
            return Violation("associativity", (x, y, z), f"associativity fails at ({x},{y},{z})")
    return None


def check_element(m: MonoidView, x: int) -> int:
    if not 0 <= x < m.order:
        raise ValueError(f"element {x} is not in 0..{m.order - 1}")
    return x


# ---------------------------------------------------------------------------
# file formats

def split_labels(text: str) -> list[str]:
    """Split on commas that are not nested inside (), {} or []."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out


def parse_text(text: str) -> FiniteMonoid:
    """Parse the ``.mon`` text format (``n=``, optional ``labels=``, then rows)."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise MonoidError("first line must be n=<order>")
    try:
        n = int(lines[0].replace(" ", "")[2:])
    except ValueError:
        raise MonoidError(f"bad order line {lines[0]!r}") from None
    labels = None
    body = lines[1:]
    if body and body[0].replace(" ", "").startswith("labels="):
        labels = split_labels(body[0].split("=", 1)[1])
        body = body[1:]
    if len(body) != n:
        raise MonoidError(f"expected {n} table rows, found {len(body)}")
    try:
        rows = [[int(tok) for tok in line.split()] for line in body]
    except ValueError as exc:
        raise MonoidError(f"non-integer table entry: {exc}") from None
    if n < 1:
        raise MonoidError("order must be positive")
    return FiniteMonoid(rows, labels)


def format_text(m: FiniteMonoid) -> str:
    out = [f"n={m.order}"]
    if m.has_labels:
        out.append("labels=" + ",".join(m.labels()))
    width = len(str(m.order - 1))
    for r in m.as_lists():
        out.append(" ".join(str(v).rjust(width) for v in r))
    return "\n".join(out) + "\n"


def to_json(m: FiniteMonoid) -> dict:
    return {"order": m.order, "labels": m.labels() if m.has_labels else None,
            "table": m.as_lists()}


def from_json(data: dict | str) -> FiniteMonoid:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        order, table = int(data["order"]), data["table"]
    except (KeyError, TypeError, ValueError):
        raise MonoidError("JSON monoid needs integer 'order' and 'table'") from None
    if len(table) != order:
        raise MonoidError(f"order {order} but {len(table)} rows")
    return FiniteMonoid(table, data.get("labels"))


def load(path: str) -> FiniteMonoid:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MonoidError(f"bad JSON: {exc}") from None
    return parse_text(text)


def save(m: FiniteMonoid, path: str) -> None:
    with open(path, "w") as fh:
        if path.endswith(".json"):
            json.dump(to_json(m), fh)
            fh.write("\n")
        else:
            fh.write(format_text(m))


# ---------------------------------------------------------------------------
# isomorphism by canonical form

CANON_CAP = 9


def canonical_form(m: MonoidView) -> tuple[int, ...]:
    """Lexicographically least flattened table over relabelings fixing 0."""
    n = m.order
    if n > CANON_CAP:
        raise CapacityError(f"canonical form limited to order {CANON_CAP}")
    t = np.asarray(m.table, dtype=np.int64)
    if n == 1:
        return (0,)
    perms = np.array([(0,) + p for p in itertools.permutations(range(1, n))], dtype=np.int64)
    inv = np.argsort(perms, axis=1)
    # relabelled[k][i][j] = perm_k[t[inv_k[i]][inv_k[j]]]
    inner = t[inv[:, :, None], inv[:, None, :]]
    flat = np.take_along_axis(perms, inner.reshape(len(perms), -1), axis=1)
    cand = np.arange(len(perms))
    for col in range(n * n):
        vals = flat[cand, col]
        cand = cand[vals == vals.min()]
        if len(cand) == 1:
            break
    return tuple(int(v) for v in flat[cand[0]])


def is_isomorphic(m1: MonoidView, m2: MonoidView) -> bool:
    return m1.order == m2.order and canonical_form(m1) == canonical_form(m2)


def from_canonical(form: Sequence[int]) -> FiniteMonoid:
    n = int(round(len(form) ** 0.5))
    return FiniteMonoid([form[i * n:(i + 1) * n] for i in range(n)])
