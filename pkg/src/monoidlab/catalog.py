"""Named small monoids and exhaustive enumeration of monoids of order <= 4."""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import BadOrder, BadParameter, UnknownSpec
from .io import format_mon, write_atomic
from .monoid import (
    FiniteMonoid,
    find_identity,
    idempotents,
    is_commutative,
    is_group,
    is_regular,
    validate_table,
)

# Monoids of order n up to isomorphism (OEIS A058129), n = 1..4.
A058129 = {1: 1, 2: 2, 3: 7, 4: 35}

NAMED_SPECS = (
    "trivial",
    "zn:2",
    "u1",
    "zn:3",
    "monogenic:1,2",
    "monogenic:2,1",
    "t2",
    "zn:4",
    "monogenic:3,1",
    "sym:3",
)


def _cyclic(k: int) -> list[list[int]]:
    return [[(i + j) % k for j in range(k)] for i in range(k)]


def _monogenic(k: int, m: int) -> list[list[int]]:
    """<x | x^(k+m) = x^k>; index i stands for x^i."""

    def reduce(e: int) -> int:
        return e if e < k + m else k + (e - k) % m

    n = k + m
    return [[reduce(i + j) for j in range(n)] for i in range(n)]


def _transformations(maps: list[tuple[int, ...]]) -> list[list[int]]:
    """Composition 'first f then g' on a list of self-maps."""
    index = {f: i for i, f in enumerate(maps)}
    return [[index[tuple(g[f[p]] for p in range(len(f)))] for g in maps] for f in maps]


def _params(spec: str, arg: str, count: int) -> list[int]:
    try:
        vals = [int(v) for v in arg.split(",")]
    except ValueError:
        raise BadParameter(f"{spec!r}: parameters must be integers") from None
    if len(vals) != count or any(v < 1 for v in vals):
        raise BadParameter(f"{spec!r}: expected {count} integer(s) >= 1")
    return vals


def named(spec: str) -> FiniteMonoid:
    """Build a catalog monoid from a spec such as ``zn:3`` or ``monogenic:2,1``.

    ``mon:n,k`` is the k-th enumerated representative of order n.
    """
    name, _, arg = spec.strip().partition(":")
    if name == "trivial" and not arg:
        table = [[0]]
    elif name == "u1" and not arg:
        table = [[0, 1], [1, 1]]
    elif name == "t2" and not arg:
        table = _transformations([(0, 1), (1, 0), (0, 0), (1, 1)])
    elif name == "zn":
        (k,) = _params(spec, arg, 1)
        table = _cyclic(k)
    elif name == "monogenic":
        k, m = _params(spec, arg, 2)
        table = _monogenic(k, m)
    elif name == "mon":
        n, k = _params(spec, arg, 2)
        if not 1 <= n <= 4:
            raise BadParameter(f"{spec!r}: enumerated monoids exist for orders 1..4")
        reps = _representatives(n)
        if k > len(reps):
            raise BadParameter(f"{spec!r}: only {len(reps)} monoids of order {n}")
        return reps[k - 1]
    elif name == "sym":
        (k,) = _params(spec, arg, 1)
        table = _transformations(list(itertools.permutations(range(k))))
    else:
        raise UnknownSpec(f"unknown monoid spec {spec!r}")
    return validate_table(table, spec.strip())


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    monoid: FiniteMonoid
    regular: bool
    group: bool
    commutative: bool
    idempotent_count: int

    @classmethod
    def of(cls, name: str, M: FiniteMonoid) -> CatalogEntry:
        return cls(
            name,
            M,
            is_regular(M, cap=None).regular,
            is_group(M),
            is_commutative(M),
            len(idempotents(M)),
        )


def named_catalog(max_order: int | None = None) -> list[CatalogEntry]:
    out = []
    for spec in NAMED_SPECS:
        M = named(spec)
        if max_order is None or M.order <= max_order:
            out.append(CatalogEntry.of(spec, M))
    return out


# -- enumeration ---------------------------------------------------------------


def _relabel(table: tuple[int, ...], n: int, perm: tuple[int, ...]) -> tuple[int, ...]:
    """Table of the same monoid after renaming element i to perm[i]."""
    out = [0] * (n * n)
    for i in range(n):
        for j in range(n):
            out[perm[i] * n + perm[j]] = perm[table[i * n + j]]
    return tuple(out)


def canonical_form(table: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Least flattened table over relabelings sending the identity to 0."""
    e = find_identity(np.array(table).reshape(n, n))
    assert e is not None
    others = [i for i in range(n) if i != e]
    best = None
    for images in itertools.permutations(range(1, n)):
        perm = [0] * n
        for src, dst in zip(others, images):
            perm[src] = dst
        cand = _relabel(table, n, tuple(perm))
        if best is None or cand < best:
            best = cand
    return best


def _identity_zero_tables(n: int) -> Iterator[tuple[int, ...]]:
    """Associative n x n tables with identity 0, by backtracking over the
    (n-1)^2 free cells with a fail-fast associativity check."""
    T = [[-1] * n for _ in range(n)]
    for i in range(n):
        T[0][i] = T[i][0] = i
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    rng = range(n)

    def consistent() -> bool:
        for x in rng:
            for y in rng:
                xy = T[x][y]
                if xy < 0:
                    continue
                for z in rng:
                    yz = T[y][z]
                    if yz < 0:
                        continue
                    l, r = T[xy][z], T[x][yz]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        return True

    def fill(k: int) -> Iterator[tuple[int, ...]]:
        if k == len(cells):
            yield tuple(v for row in T for v in row)
            return
        i, j = cells[k]
        for v in rng:
            T[i][j] = v
            if consistent():
                yield from fill(k + 1)
        T[i][j] = -1

    yield from fill(0)


def _move_identity(table: tuple[int, ...], n: int, e: int) -> tuple[int, ...]:
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    return _relabel(table, n, tuple(perm))


def enumerate_monoids(n: int, up_to_iso: bool = True) -> list[FiniteMonoid]:
    """All monoids on {0..n-1}, or one canonical representative per class.

    Labeled enumeration lets the identity sit at any index.  Representatives
    have the identity at 0 and are sorted by flattened table.
    """
    if not 1 <= n <= 4:
        raise BadOrder(f"enumeration supports orders 1..4, got {n}")
    if up_to_iso:
        return list(_representatives(n))
    base = list(_identity_zero_tables(n))
    tables = sorted({_move_identity(t, n, e) for t in base for e in range(n)})
    return [validate_table(np.array(t).reshape(n, n), f"labeled{n}:{k}") for k, t in enumerate(tables, 1)]


@lru_cache(maxsize=None)
def _representatives(n: int) -> tuple[FiniteMonoid, ...]:
    tables = sorted({canonical_form(t, n) for t in _identity_zero_tables(n)})
    return tuple(
        validate_table(np.array(t).reshape(n, n), f"mon:{n},{k}") for k, t in enumerate(tables, 1)
    )


def automorphism_count(M: FiniteMonoid) -> int:
    n = M.order
    flat = tuple(M.table.flatten().tolist())
    return sum(
        1 for perm in itertools.permutations(range(n)) if _relabel(flat, n, perm) == flat
    )


def recount_unpruned(n: int) -> tuple[int, int]:
    """Independent count by scanning all n^(n*n) tables.

    Returns (labeled count, isomorphism classes); classes are found by the
    orbit of each table under all n! relabelings.
    """
    labeled = []
    rng = range(n)
    for flat in itertools.product(rng, repeat=n * n):
        has_identity = any(
            all(flat[e * n + x] == x and flat[x * n + e] == x for x in rng) for e in rng
        )
        if not has_identity:
            continue
        if all(
            flat[flat[x * n + y] * n + z] == flat[x * n + flat[y * n + z]]
            for x in rng
            for y in rng
            for z in rng
        ):
            labeled.append(flat)
    seen: set[tuple[int, ...]] = set()
    classes = 0
    for flat in labeled:
        if flat in seen:
            continue
        classes += 1
        for perm in itertools.permutations(rng):
            seen.add(_relabel(flat, n, perm))
    return len(labeled), classes


def export_catalog(directory: str | Path, entries: list[CatalogEntry]) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    index_lines = []
    for e in entries:
        fname = e.name.replace(":", "_").replace(",", "-") + ".mon"
        write_atomic(d / fname, format_mon(e.monoid, comment=e.name))
        index_lines.append(f"{e.name} {e.monoid.order} {'regular' if e.regular else 'non_regular'}")
    write_atomic(d / "index.txt", "\n".join(index_lines) + "\n")
    return d
