"""The Schützenberger product A<>B and its variant A<>_v B.

Middle components are bit vectors over a fixed enumeration of pairs: pair
``(l, r)`` sits at bit ``l * |B| + r``, where ``l`` is an element of A for the
classic product and a function code (see :mod:`monoidlab.products`) for the
variant.  The integer value of that bit vector is the P-code.

Flat indices of product elements are ``((b * n_left) + l) * 2**n_bits + P``:
``b`` is the most significant component, then ``a`` (or the code of ``f``),
then the P-code.  Least-index witnesses follow this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import CapExceeded, MixedParents
from .monoid import MAX_ORACLE_ORDER, FiniteMonoid, validate_table
from .products import FnFin, FunctionSpace, fn_code, fn_decode, fn_identity, fn_mul, fn_shift

# Beyond this many pair bits the per-mask lookup tables are not built.
MAX_TABLE_BITS = 24


@dataclass(frozen=True)
class PairSet:
    """A subset of L x R stored as a membership bit vector."""

    n_left: int
    n_right: int
    bits: int = 0

    @classmethod
    def from_pairs(cls, n_left: int, n_right: int, pairs: Iterable[tuple[int, int]]) -> PairSet:
        bits = 0
        for l, r in pairs:
            if not (0 <= l < n_left and 0 <= r < n_right):
                raise MixedParents(f"pair {(l, r)} outside {n_left}x{n_right}")
            bits |= 1 << (l * n_right + r)
        return cls(n_left, n_right, bits)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(divmod(j, self.n_right) for j in _bit_positions(self.bits))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __contains__(self, pair: object) -> bool:
        l, r = pair  # type: ignore[misc]
        return 0 <= r < self.n_right and bool(self.bits >> (l * self.n_right + r) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __or__(self, other: PairSet) -> PairSet:
        _same_shape(self, other)
        return PairSet(self.n_left, self.n_right, self.bits | other.bits)

    def __repr__(self) -> str:
        return f"PairSet({set(self.pairs()) or '{}'})"


VarPairSet = PairSet  # left coordinate is a function code


def _bit_positions(bits: int) -> Iterator[int]:
    j = 0
    while bits:
        if bits & 1:
            yield j
        bits >>= 1
        j += 1


def _same_shape(P: PairSet, Q: PairSet) -> None:
    if (P.n_left, P.n_right) != (Q.n_left, Q.n_right):
        raise MixedParents("pair sets over different carriers")


def pairset_shift(B: FiniteMonoid, P: PairSet, b: int) -> PairSet:
    """Pb = {(c, d*b) : (c, d) in P}."""
    if P.n_right != B.order:
        raise MixedParents("pair set is not over this B")
    nR = P.n_right
    out = 0
    for l, r in P.pairs():
        out |= 1 << (l * nR + B.mul(r, b))
    return PairSet(P.n_left, nR, out)


varpairset_shift = pairset_shift


def pairset_scale(A: FiniteMonoid, a: int, P: PairSet) -> PairSet:
    """aP = {(a*c, d) : (c, d) in P}."""
    if P.n_left != A.order:
        raise MixedParents("pair set is not over this A")
    nR = P.n_right
    out = 0
    for l, r in P.pairs():
        out |= 1 << (A.mul(a, l) * nR + r)
    return PairSet(P.n_left, nR, out)


class SchutzElem(NamedTuple):
    a: int
    P: PairSet
    b: int


class VariantElem(NamedTuple):
    f: FnFin
    P: PairSet
    b: int


def schutz_mul(A: FiniteMonoid, B: FiniteMonoid, x: SchutzElem, y: SchutzElem) -> SchutzElem:
    """(a1, P1, b1)(a2, P2, b2) = (a1 a2, P1 b2 u a1 P2, b1 b2)."""
    for e in (x, y):
        if e.P.n_left != A.order or e.P.n_right != B.order or not (
            0 <= e.a < A.order and 0 <= e.b < B.order
        ):
            raise MixedParents(f"{e} is not an element of {A.label}<>{B.label}")
    P = pairset_shift(B, x.P, y.b) | pairset_scale(A, x.a, y.P)
    return SchutzElem(A.mul(x.a, y.a), P, B.mul(x.b, y.b))


def variant_mul(A: FiniteMonoid, B: FiniteMonoid, x: VariantElem, y: VariantElem) -> VariantElem:
    """(f, P1, b1)(g, P2, b2) = (f * shift(g, b1), P1 b2 u P2, b1 b2)."""
    n_left = A.order**B.order
    for e in (x, y):
        if (
            e.P.n_left != n_left
            or e.P.n_right != B.order
            or len(e.f) != B.order
            or not 0 <= e.b < B.order
        ):
            raise MixedParents(f"{e} is not an element of {A.label}<>v{B.label}")
    f = fn_mul(A, x.f, fn_shift(B, y.f, x.b))
    return VariantElem(f, pairset_shift(B, x.P, y.b) | y.P, B.mul(x.b, y.b))


class _TripleProduct:
    """Shared lazy machinery: canonical codes and vectorised multiplication."""

    kind = ""

    def __init__(self, A: FiniteMonoid, B: FiniteMonoid, n_left: int):
        self.A, self.B = A, B
        self.n_left = n_left
        self.n_bits = n_left * B.order
        self.order = n_left * (1 << self.n_bits) * B.order

    # -- codes ---------------------------------------------------------------
    def code(self, l: int, P: int, b: int) -> int:
        return ((b * self.n_left + l) << self.n_bits) | P

    def split(self, c):
        """code(s) -> (left, P-code, b)."""
        P = c & ((1 << self.n_bits) - 1)
        rest = c >> self.n_bits
        return rest % self.n_left, P, rest // self.n_left

    def check_cap(self, cap: int | None) -> None:
        if cap is not None and self.order > cap:
            raise CapExceeded(self.order, cap)

    # -- pair bookkeeping ----------------------------------------------------
    def empty(self) -> PairSet:
        return PairSet(self.n_left, self.B.order, 0)

    def _bit_table(self, target) -> np.ndarray:
        """Lookup table mask -> image mask, for a map on pair positions."""
        if self.n_bits > MAX_TABLE_BITS:
            raise CapExceeded(1 << self.n_bits, 1 << MAX_TABLE_BITS, "pair-set table")
        masks = np.arange(1 << self.n_bits, dtype=np.int64)
        out = np.zeros_like(masks)
        for j in range(self.n_bits):
            out |= ((masks >> j) & 1) << target(j)
        return out

    @cached_property
    def shift_table(self) -> np.ndarray:
        nR = self.B.order
        rows = []
        for b in range(nR):
            col = self.B.table[:, b]
            rows.append(self._bit_table(lambda j: (j // nR) * nR + int(col[j % nR])))
        return np.stack(rows)

    def all_codes(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def mul_codes(self, x, y):
        raise NotImplementedError

    def mul_code(self, x: int, y: int) -> int:
        return int(self.mul_codes(np.int64(x), np.int64(y)))

    def monoid(self, *, cap: int | None = MAX_ORACLE_ORDER, seed: int = 0) -> FiniteMonoid:
        """Materialise the full Cayley table (carrier order must fit under ``cap``)."""
        self.check_cap(cap)
        c = self.all_codes()
        T = self.mul_codes(c[:, None], c[None, :])
        l, P, b = self.split(c)
        elements = tuple(zip(l.tolist(), P.tolist(), b.tolist()))
        M = validate_table(T, self.label, seed=seed, elements=elements)
        if M.identity != self.identity_code:
            raise AssertionError("materialised identity differs from the constructed one")
        return M


class SchutzProduct(_TripleProduct):
    kind = "schutz"

    def __init__(self, A: FiniteMonoid, B: FiniteMonoid):
        super().__init__(A, B, A.order)
        self.label = f"{A.label}<>{B.label}"
        self.identity_code = self.code(A.identity, 0, B.identity)

    @property
    def identity(self) -> SchutzElem:
        return SchutzElem(self.A.identity, self.empty(), self.B.identity)

    def element(self, a: int, pairs: Iterable[tuple[int, int]], b: int) -> SchutzElem:
        return SchutzElem(a, PairSet.from_pairs(self.A.order, self.B.order, pairs), b)

    def encode(self, x: SchutzElem) -> int:
        return self.code(x.a, x.P.bits, x.b)

    def decode(self, c: int) -> SchutzElem:
        a, P, b = self.split(int(c))
        return SchutzElem(a, PairSet(self.A.order, self.B.order, P), b)

    def mul(self, x: SchutzElem, y: SchutzElem) -> SchutzElem:
        return schutz_mul(self.A, self.B, x, y)

    @cached_property
    def scale_table(self) -> np.ndarray:
        nR = self.B.order
        rows = []
        for a in range(self.A.order):
            row = self.A.table[a]
            rows.append(self._bit_table(lambda j: int(row[j // nR]) * nR + j % nR))
        return np.stack(rows)

    def mul_codes(self, x, y):
        a1, P1, b1 = self.split(x)
        a2, P2, b2 = self.split(y)
        P = self.shift_table[b2, P1] | self.scale_table[a1, P2]
        return self.code(self.A.table[a1, a2], P, self.B.table[b1, b2])

    def describe(self, c: int) -> dict:
        x = self.decode(c)
        return {"a": x.a, "P": [list(p) for p in x.P.pairs()], "b": x.b}


class VariantProduct(_TripleProduct):
    kind = "variant"

    def __init__(self, A: FiniteMonoid, B: FiniteMonoid):
        super().__init__(A, B, A.order**B.order)
        self.space = FunctionSpace(A, B)
        self.label = f"{A.label}<>v{B.label}"
        self.identity_code = self.code(self.space.identity_code, 0, B.identity)

    @property
    def identity(self) -> VariantElem:
        return VariantElem(fn_identity(self.A, self.B), self.empty(), self.B.identity)

    def element(self, f: FnFin, pairs: Iterable[tuple[FnFin, int]], b: int) -> VariantElem:
        coded = [(fn_code(self.A, g), d) for g, d in pairs]
        return VariantElem(tuple(f), PairSet.from_pairs(self.n_left, self.B.order, coded), b)

    def encode(self, x: VariantElem) -> int:
        return self.code(fn_code(self.A, x.f), x.P.bits, x.b)

    def decode(self, c: int) -> VariantElem:
        l, P, b = self.split(int(c))
        return VariantElem(fn_decode(self.A, self.B, l), PairSet(self.n_left, self.B.order, P), b)

    def mul(self, x: VariantElem, y: VariantElem) -> VariantElem:
        return variant_mul(self.A, self.B, x, y)

    def mul_codes(self, x, y):
        f1, P1, b1 = self.split(x)
        f2, P2, b2 = self.split(y)
        f = self.space.mul_codes(f1, self.space.shift_codes(f2, b1))
        P = self.shift_table[b2, P1] | P2
        return self.code(f, P, self.B.table[b1, b2])

    def describe(self, c: int) -> dict:
        x = self.decode(c)
        pairs = [[list(fn_decode(self.A, self.B, l)), d] for l, d in x.P.pairs()]
        return {"f": list(x.f), "P": pairs, "b": x.b}


def schutz_monoid(
    A: FiniteMonoid, B: FiniteMonoid, *, cap: int | None = MAX_ORACLE_ORDER, seed: int = 0
) -> FiniteMonoid:
    return SchutzProduct(A, B).monoid(cap=cap, seed=seed)


def variant_monoid(
    A: FiniteMonoid, B: FiniteMonoid, *, cap: int | None = MAX_ORACLE_ORDER, seed: int = 0
) -> FiniteMonoid:
    return VariantProduct(A, B).monoid(cap=cap, seed=seed)


def make_product(kind: str, A: FiniteMonoid, B: FiniteMonoid) -> SchutzProduct | VariantProduct:
    if kind == "schutz":
        return SchutzProduct(A, B)
    if kind == "variant":
        return VariantProduct(A, B)
    raise ValueError(f"unknown product kind {kind!r}")
