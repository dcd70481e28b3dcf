"""Finite monoids as validated Cayley tables, plus the brute-force regularity oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from .errors import (
    CapExceeded,
    EntryOutOfRange,
    ForeignElement,
    InputError,
    NoIdentity,
    NonAssociative,
)

MAX_ORACLE_ORDER = 10_000

# Tables above this order get sampled associativity checks instead of the full n^3 sweep.
EXHAUSTIVE_ASSOC_ORDER = 200
ASSOC_SAMPLES = 100_000


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """A monoid on ``{0..n-1}``.

    Build instances through :func:`validate_table`; the constructor does not
    check anything.  ``elements`` optionally decodes each flat index into the
    components it stands for when the monoid was built as a product.
    """

    table: np.ndarray
    identity: int
    label: str = ""
    elements: tuple | None = field(default=None, repr=False)
    assoc_check: str = "exhaustive"

    def __post_init__(self) -> None:
        self.table.setflags(write=False)

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r) for r in self.table.tolist())

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def elem(self, i: int) -> Elem:
        if not 0 <= i < self.order:
            raise ForeignElement(f"index {i} not in monoid {self.label!r} of order {self.order}")
        return Elem(self, i)

    def same_table(self, other: FiniteMonoid) -> bool:
        return self.identity == other.identity and np.array_equal(self.table, other.table)

    def __repr__(self) -> str:
        return f"FiniteMonoid({self.label!r}, order={self.order}, identity={self.identity})"


@dataclass(frozen=True)
class Elem:
    monoid: FiniteMonoid = field(compare=False, repr=False)
    index: int

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Elem)
            and other.monoid is self.monoid
            and other.index == self.index
        )

    def __hash__(self) -> int:
        return hash((id(self.monoid), self.index))

    def __mul__(self, other: Elem) -> Elem:
        return mul(self.monoid, self, other)


@dataclass(frozen=True)
class InverseSet:
    element: int
    inverses: tuple[int, ...]

    def __bool__(self) -> bool:
        return bool(self.inverses)


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.regular


def _index(M: FiniteMonoid, x: int | Elem) -> int:
    if isinstance(x, Elem):
        if x.monoid is not M:
            raise ForeignElement(f"element {x.index} belongs to {x.monoid.label!r}, not {M.label!r}")
        return x.index
    x = int(x)
    if not 0 <= x < M.order:
        raise ForeignElement(f"index {x} not in monoid {M.label!r} of order {M.order}")
    return x


def _as_array(table: Any) -> np.ndarray:
    rows = [list(r) for r in table]
    n = len(rows)
    if n < 1:
        raise InputError("table must have at least one row")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise InputError(f"row {i} has {len(r)} entries, expected {n}")
        for j, v in enumerate(r):
            if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
                raise EntryOutOfRange(i, j, v)
            if not 0 <= v < n:
                raise EntryOutOfRange(i, j, int(v))
    return np.array(rows, dtype=np.int64).reshape(n, n)


def find_identity(T: np.ndarray) -> int | None:
    n = T.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(T[e], ar) and np.array_equal(T[:, e], ar):
            return e
    return None


def first_assoc_violation(T: np.ndarray) -> tuple[int, int, int] | None:
    """Lexicographically first (i, j, k) with (ij)k != i(jk), or None."""
    n = T.shape[0]
    for i in range(n):
        left = T[T[i]]          # [j, k] -> (i*j)*k
        right = T[i][T]         # [j, k] -> i*(j*k)
        bad = np.argwhere(left != right)
        if bad.size:
            j, k = bad[0]
            return i, int(j), int(k)
    return None


def sampled_assoc_violation(
    T: np.ndarray, samples: int = ASSOC_SAMPLES, seed: int = 0
) -> tuple[int, int, int] | None:
    n = T.shape[0]
    rng = np.random.default_rng(seed)
    i, j, k = rng.integers(0, n, size=(3, samples))
    bad = np.nonzero(T[T[i, j], k] != T[i, T[j, k]])[0]
    if not bad.size:
        return None
    triples = sorted(zip(i[bad].tolist(), j[bad].tolist(), k[bad].tolist()))
    return triples[0]


def validate_table(
    table: Any,
    label: str = "",
    *,
    assoc: str = "auto",
    seed: int = 0,
    elements: tuple | None = None,
) -> FiniteMonoid:
    """Check a Cayley table and wrap it as a :class:`FiniteMonoid`.

    ``assoc`` is ``"exhaustive"``, ``"sampled"`` (``ASSOC_SAMPLES`` seeded
    triples) or ``"auto"``, which is exhaustive up to ``EXHAUSTIVE_ASSOC_ORDER``.
    Raises EntryOutOfRange, NoIdentity or NonAssociative (first violation in
    lexicographic order).
    """
    T = table if isinstance(table, np.ndarray) and table.dtype == np.int64 else None
    if T is None:
        T = _as_array(table)
    else:
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] < 1:
            raise InputError(f"table must be square and non-empty, got shape {T.shape}")
        out = np.argwhere((T < 0) | (T >= T.shape[0]))
        if out.size:
            i, j = out[0]
            raise EntryOutOfRange(int(i), int(j), int(T[i, j]))
        T = T.copy()
    e = find_identity(T)
    if e is None:
        raise NoIdentity()
    mode = assoc
    if mode == "auto":
        mode = "exhaustive" if T.shape[0] <= EXHAUSTIVE_ASSOC_ORDER else "sampled"
    if mode == "exhaustive":
        bad = first_assoc_violation(T)
        check = "exhaustive"
    elif mode == "sampled":
        bad = sampled_assoc_violation(T, seed=seed)
        check = f"sampled:{ASSOC_SAMPLES}:seed={seed}"
    else:
        raise ValueError(f"unknown associativity mode {assoc!r}")
    if bad is not None:
        i, j, k = bad
        raise NonAssociative(i, j, k, int(T[T[i, j], k]), int(T[i, T[j, k]]))
    return FiniteMonoid(T, e, label, elements, check)


def mul(M: FiniteMonoid, x: int | Elem, y: int | Elem) -> Elem:
    return Elem(M, M.mul(_index(M, x), _index(M, y)))


def idempotents(M: FiniteMonoid) -> tuple[int, ...]:
    T = M.table
    ar = np.arange(M.order)
    return tuple(int(i) for i in np.nonzero(T[ar, ar] == ar)[0])


def inverse_mask(M: FiniteMonoid, a: int) -> np.ndarray:
    T = M.table
    b = np.arange(M.order)
    aba = T[T[a, b], a]
    bab = T[T[b, a], b]
    return (aba == a) & (bab == b)


def inverse_set(M: FiniteMonoid, a: int | Elem) -> InverseSet:
    a = _index(M, a)
    return InverseSet(a, tuple(int(b) for b in np.nonzero(inverse_mask(M, a))[0]))


def is_regular(M: FiniteMonoid, *, cap: int | None = MAX_ORACLE_ORDER) -> RegularityVerdict:
    """Every element has an inverse; the witness is the least index without one."""
    if cap is not None and M.order > cap:
        raise CapExceeded(M.order, cap)
    for a in range(M.order):
        if not inverse_mask(M, a).any():
            return RegularityVerdict(False, a)
    return RegularityVerdict(True)


def is_group(M: FiniteMonoid) -> bool:
    T = M.table
    ar = np.arange(M.order)
    return bool(
        all(np.array_equal(np.sort(r), ar) for r in T)
        and all(np.array_equal(np.sort(c), ar) for c in T.T)
    )


def is_commutative(M: FiniteMonoid) -> bool:
    return bool(np.array_equal(M.table, M.table.T))


def left_multiples(M: FiniteMonoid, z: int) -> frozenset[int]:
    """``M*z``: all w*z."""
    return frozenset(int(v) for v in M.table[:, z])


def right_multiples(M: FiniteMonoid, z: int) -> frozenset[int]:
    """``z*M``: all z*w."""
    return frozenset(int(v) for v in M.table[z])

