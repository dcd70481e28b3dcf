"""Direct, semidirect and wreath products, and the function space A^(+B).

Flat-index conventions (fixed so reports line up across runs):

* pairs ``(a, b)`` live at ``a * |B| + b``;
* a function ``f: B -> A`` is encoded mixed-radix in base ``|A|`` with the
  last position of ``B`` as the fastest-varying digit;
* wreath elements ``(f, b)`` live at ``code(f) * |B| + b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    CompositionLawBroken,
    IdentityActionBroken,
    InputError,
    NotEndomorphism,
)
from .monoid import MAX_ORACLE_ORDER, FiniteMonoid, validate_table

FnFin = tuple  # tuple of A-indices, position i holds the value at B-element i


def _check_cap(required: int, cap: int | None, what: str = "carrier") -> None:
    if cap is not None and required > cap:
        raise CapExceeded(required, cap, what)


def direct_product(
    A: FiniteMonoid, B: FiniteMonoid, *, cap: int | None = MAX_ORACLE_ORDER
) -> FiniteMonoid:
    nA, nB = A.order, B.order
    _check_cap(nA * nB, cap)
    idx = np.arange(nA * nB)
    ai, bi = idx // nB, idx % nB
    T = A.table[ai[:, None], ai[None, :]] * nB + B.table[bi[:, None], bi[None, :]]
    elements = tuple(zip(ai.tolist(), bi.tolist()))
    return validate_table(T, f"{A.label}x{B.label}", elements=elements)


def pair_code(B: FiniteMonoid, a: int, b: int) -> int:
    return a * B.order + b


def pair_decode(B: FiniteMonoid, i: int) -> tuple[int, int]:
    return divmod(i, B.order)


# -- actions and semidirect products ----------------------------------------


@dataclass(frozen=True, eq=False)
class EndoAction:
    """``maps[b][a]`` is the image of ``a`` under theta_b."""

    A: FiniteMonoid
    B: FiniteMonoid
    maps: tuple[tuple[int, ...], ...]

    def __call__(self, b: int, a: int) -> int:
        return self.maps[b][a]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.maps, dtype=np.int64).reshape(self.B.order, self.A.order)


def trivial_action(A: FiniteMonoid, B: FiniteMonoid) -> EndoAction:
    return validate_action(A, B, [list(range(A.order))] * B.order)


def validate_action(
    A: FiniteMonoid, B: FiniteMonoid, maps: Sequence[Sequence[int]]
) -> EndoAction:
    """Check that ``b -> theta_b`` is a monoid map from B into End(A).

    Violations are reported in this order, each at its first occurrence:
    NotEndomorphism, IdentityActionBroken, CompositionLawBroken.
    """
    nA, nB = A.order, B.order
    if len(maps) != nB:
        raise InputError(f"expected {nB} maps (one per element of B), got {len(maps)}")
    rows = []
    for b, m in enumerate(maps):
        m = tuple(int(v) for v in m)
        if len(m) != nA:
            raise InputError(f"theta_{b} has {len(m)} images, expected {nA}")
        if any(not 0 <= v < nA for v in m):
            raise InputError(f"theta_{b} has an image outside A")
        rows.append(m)
    for b, th in enumerate(rows):
        if th[A.identity] != A.identity:
            raise NotEndomorphism(b, None, None, "identity not fixed")
        for x in range(nA):
            for y in range(nA):
                if th[A.mul(x, y)] != A.mul(th[x], th[y]):
                    raise NotEndomorphism(b, x, y)
    for a in range(nA):
        if rows[B.identity][a] != a:
            raise IdentityActionBroken(a)
    for b1 in range(nB):
        for b2 in range(nB):
            composed = rows[B.mul(b1, b2)]
            for a in range(nA):
                if composed[a] != rows[b1][rows[b2][a]]:
                    raise CompositionLawBroken(b1, b2, a)
    return EndoAction(A, B, tuple(rows))


def semidirect_product(
    A: FiniteMonoid,
    B: FiniteMonoid,
    action: EndoAction,
    *,
    cap: int | None = MAX_ORACLE_ORDER,
    seed: int = 0,
) -> FiniteMonoid:
    """(a1, b1)(a2, b2) = (a1 * theta_b1(a2), b1 * b2)."""
    if action.A is not A or action.B is not B:
        raise InputError("action was validated for a different pair of monoids")
    nA, nB = A.order, B.order
    _check_cap(nA * nB, cap)
    idx = np.arange(nA * nB)
    ai, bi = idx // nB, idx % nB
    moved = action.array[bi[:, None], ai[None, :]]
    T = A.table[ai[:, None], moved] * nB + B.table[bi[:, None], bi[None, :]]
    elements = tuple(zip(ai.tolist(), bi.tolist()))
    return validate_table(T, f"{A.label}|x{B.label}", seed=seed, elements=elements)


# -- functions B -> A --------------------------------------------------------


def fn_identity(A: FiniteMonoid, B: FiniteMonoid) -> FnFin:
    return (A.identity,) * B.order


def fn_mul(A: FiniteMonoid, f: FnFin, g: FnFin) -> FnFin:
    return tuple(A.mul(x, y) for x, y in zip(f, g))


def fn_shift(B: FiniteMonoid, g: FnFin, b: int) -> FnFin:
    """The function x -> g(x*b)."""
    row = B.table[:, b].tolist()
    return tuple(g[row[x]] for x in range(B.order))


def fn_code(A: FiniteMonoid, f: FnFin) -> int:
    code = 0
    for v in f:
        code = code * A.order + v
    return code


def fn_decode(A: FiniteMonoid, B: FiniteMonoid, code: int) -> FnFin:
    out = []
    for _ in range(B.order):
        code, r = divmod(code, A.order)
        out.append(r)
    return tuple(reversed(out))


def iter_functions(A: FiniteMonoid, B: FiniteMonoid) -> Iterator[FnFin]:
    """All of A^(+B) in code order."""
    for code in range(A.order**B.order):
        yield fn_decode(A, B, code)


class FunctionSpace:
    """Vectorised arithmetic on codes of functions B -> A."""

    def __init__(self, A: FiniteMonoid, B: FiniteMonoid):
        self.A, self.B = A, B
        self.size = A.order**B.order
        self.weights = np.array(
            [A.order ** (B.order - 1 - p) for p in range(B.order)], dtype=np.int64
        )
        self.identity_code = fn_code(A, fn_identity(A, B))

    @cached_property
    def values(self) -> np.ndarray:
        """values[c, p] = value at position p of the function with code c."""
        codes = np.arange(self.size, dtype=np.int64)
        return (codes[:, None] // self.weights[None, :]) % self.A.order

    def mul_codes(self, c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
        V, TA = self.values, self.A.table
        out = 0
        for p in range(self.B.order):
            out = out + TA[V[c1, p], V[c2, p]] * self.weights[p]
        return np.asarray(out, dtype=np.int64)

    def shift_codes(self, c: np.ndarray, b: np.ndarray) -> np.ndarray:
        V, TB = self.values, self.B.table
        out = 0
        for p in range(self.B.order):
            out = out + V[c, TB[p, b]] * self.weights[p]
        return np.asarray(out, dtype=np.int64)


def fn_power(A: FiniteMonoid, B: FiniteMonoid, *, cap: int | None = MAX_ORACLE_ORDER) -> FiniteMonoid:
    """A^(+B) with pointwise multiplication, indexed by function code."""
    _check_cap(A.order**B.order, cap)
    space = FunctionSpace(A, B)
    ar = np.arange(space.size, dtype=np.int64)
    T = space.mul_codes(ar[:, None], ar[None, :])
    elements = tuple(tuple(r) for r in space.values.tolist())
    return validate_table(T, f"{A.label}^{B.label}", elements=elements)


def wreath_product(
    A: FiniteMonoid, B: FiniteMonoid, *, cap: int | None = MAX_ORACLE_ORDER, seed: int = 0
) -> FiniteMonoid:
    """Restricted wreath product: (f, b)(g, b') = (f * shift(g, b), b * b')."""
    nB = B.order
    _check_cap(A.order**nB * nB, cap)
    space = FunctionSpace(A, B)
    idx = np.arange(space.size * nB, dtype=np.int64)
    fi, bi = idx // nB, idx % nB
    shifted = space.shift_codes(fi[None, :], bi[:, None])
    first = space.mul_codes(fi[:, None], shifted)
    T = first * nB + B.table[bi[:, None], bi[None, :]]
    values = space.values.tolist()
    elements = tuple((tuple(values[f]), b) for f, b in zip(fi.tolist(), bi.tolist()))
    return validate_table(T, f"{A.label}wr{B.label}", seed=seed, elements=elements)
