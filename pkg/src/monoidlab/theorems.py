"""Regularity criteria for A<>B and A<>_v B, checked against the brute-force oracle.

Condition ids: T1.i, T1.ii (classic product), T2.i, T2.ii, T2.iii (variant).

Every universally quantified search walks the product's canonical order
(b first, then a or f, then the P-code) and stops at the first failure,
so witnesses are reproducible.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from .errors import CapExceeded
from .monoid import (
    MAX_ORACLE_ORDER,
    FiniteMonoid,
    idempotents,
    inverse_set,
    is_regular,
    left_multiples,
    right_multiples,
)
from .products import fn_decode
from .schutz import PairSet, SchutzProduct, make_product

# Largest number of pair bits for which "for every P" is enumerated literally.
SWEEP_BITS = 16
EXHAUSTIVE_ASSOC_ORDER = 200
ASSOC_SAMPLES = 100_000


@dataclass
class ConditionResult:
    condition_id: str
    holds: bool
    witness: dict | None = None
    mode: str = "exact"
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"id": self.condition_id, "holds": self.holds, "witness": self.witness, "mode": self.mode}
        d.update(self.extra)
        return d


@dataclass
class TheoremVerdict:
    which: int
    verdict: bool
    conditions: list[ConditionResult]

    @property
    def reduced_mode(self) -> bool:
        return any(c.mode == "reduced" for c in self.conditions)

    def condition(self, cid: str) -> ConditionResult:
        return next(c for c in self.conditions if c.condition_id == cid)


# -- P = u P1 v ---------------------------------------------------------------


def form_mask(A: FiniteMonoid, B: FiniteMonoid, u: int, v: int) -> int:
    """Pairs (p, q) with p in uA and q in Bv, as a bit mask over A x B."""
    left, right = right_multiples(A, u), left_multiples(B, v)
    nB = B.order
    m = 0
    for p in left:
        for q in right:
            m |= 1 << (p * nB + q)
    return m


def exists_form_aP1b(A: FiniteMonoid, B: FiniteMonoid, P: PairSet, a: int, b: int) -> bool:
    """Is P = aP1b for some P1 (membership test: P inside aA x Bb)?"""
    return P.bits & ~form_mask(A, B, a, b) == 0


def image_codes(n_bits: int, target: Callable[[int], int]) -> set[int]:
    """Images of all 2**n_bits subsets under a map on bit positions."""
    single = [1 << target(j) for j in range(n_bits)]
    img = [0] * (1 << n_bits)
    for m in range(1, 1 << n_bits):
        low = (m & -m).bit_length() - 1
        img[m] = img[m & (m - 1)] | single[low]
    return set(img)


def form_images_bruteforce(A: FiniteMonoid, B: FiniteMonoid, u: int, v: int) -> set[int]:
    nB = B.order
    return image_codes(
        A.order * nB, lambda j: A.mul(u, j // nB) * nB + B.mul(j % nB, v)
    )


def exists_form_aP1b_bruteforce(
    A: FiniteMonoid, B: FiniteMonoid, P: PairSet, a: int, b: int
) -> bool:
    """Same question, answered by computing aP1b for every P1."""
    return P.bits in form_images_bruteforce(A, B, a, b)


def shift_images_bruteforce(B: FiniteMonoid, n_left: int, v: int) -> set[int]:
    """All P1 v for P1 inside L x B, L of size n_left."""
    nB = B.order
    return image_codes(n_left * nB, lambda j: (j // nB) * nB + B.mul(j % nB, v))


def shift_mask(B: FiniteMonoid, n_left: int, v: int) -> int:
    right = left_multiples(B, v)
    nB = B.order
    m = 0
    for l in range(n_left):
        for q in right:
            m |= 1 << (l * nB + q)
    return m


# -- smallest P-code escaping every allowed mask ------------------------------


def first_escape_exact(masks: list[int], n_bits: int) -> int | None:
    """Enumerate every P-code in order; first one not inside any mask."""
    codes = np.arange(1 << n_bits, dtype=np.int64)
    escapes = np.ones(codes.shape, dtype=bool)
    for m in masks:
        escapes &= (codes & ~np.int64(m)) != 0
    hit = np.flatnonzero(escapes)
    return int(hit[0]) if hit.size else None


def first_escape_reduced(masks: list[int], n_bits: int) -> int | None:
    """Least integer hitting every complement, built greedily from the top bit."""
    full = (1 << n_bits) - 1
    comps = [full & ~m for m in masks]
    if any(c == 0 for c in comps):
        return None
    return _min_hitting(comps)


def _min_hitting(comps: list[int]) -> int:
    if not comps:
        return 0
    top = max((c & -c).bit_length() - 1 for c in comps)
    rest = [c & ((1 << top) - 1) for c in comps if not c >> top & 1]
    return (1 << top) | _min_hitting(rest)


def _first_escape(masks: list[int], n_bits: int, exact: bool) -> int | None:
    full = (1 << n_bits) - 1
    if any(m == full for m in masks):
        return None
    return first_escape_exact(masks, n_bits) if exact else first_escape_reduced(masks, n_bits)


# -- classic product conditions -----------------------------------------------


def regularity_condition(A: FiniteMonoid, B: FiniteMonoid, cid: str) -> ConditionResult:
    for name, M in (("A", A), ("B", B)):
        v = is_regular(M, cap=None)
        if not v.regular:
            return ConditionResult(cid, False, {"monoid": name, "element": v.witness})
    return ConditionResult(cid, True)


def thm1_condition_ii(
    A: FiniteMonoid, B: FiniteMonoid, *, sweep_bits: int = SWEEP_BITS
) -> ConditionResult:
    """Every (a, P, b) has P = aP1b, or P = caP1bd with c, d inverses of a, b.

    The inverses c, d may be chosen per element.  Up to ``sweep_bits`` pair
    bits every P is enumerated; above that the first failing P is computed
    directly from the allowed masks (reported as reduced mode).
    """
    n_bits = A.order * B.order
    exact = n_bits <= sweep_bits
    inv_a = [inverse_set(A, a).inverses for a in range(A.order)]
    inv_b = [inverse_set(B, b).inverses for b in range(B.order)]
    for b in range(B.order):
        for a in range(A.order):
            masks = [form_mask(A, B, a, b)]
            for c in inv_a[a]:
                for d in inv_b[b]:
                    masks.append(form_mask(A, B, A.mul(c, a), B.mul(b, d)))
            P = _first_escape(masks, n_bits, exact)
            if P is not None:
                pairs = PairSet(A.order, B.order, P).pairs()
                w = {"a": a, "P": [list(p) for p in pairs], "b": b}
                return ConditionResult(
                    "T1.ii", False, w, "exact" if exact else "reduced",
                    {"inverse_choice": "per_element"},
                )
    return ConditionResult(
        "T1.ii", True, None, "exact" if exact else "reduced", {"inverse_choice": "per_element"}
    )


def thm1_verdict(A: FiniteMonoid, B: FiniteMonoid, *, sweep_bits: int = SWEEP_BITS) -> TheoremVerdict:
    conds = [regularity_condition(A, B, "T1.i"), thm1_condition_ii(A, B, sweep_bits=sweep_bits)]
    return TheoremVerdict(1, all(c.holds for c in conds), conds)


# -- variant product conditions -----------------------------------------------


def _idempotent_condition(
    A: FiniteMonoid, B: FiniteMonoid, idems: Iterable[int]
) -> dict | None:
    """First (x, f) with f(x) outside A*f(x*e) for every listed e, else None.

    Only the positions x and x*e matter, so f is enumerated on those and set
    to the identity elsewhere.
    """
    idems = list(idems)
    for x in range(B.order):
        targets = [B.mul(x, e) for e in idems]
        positions = sorted({x, *targets})
        for vals in itertools.product(range(A.order), repeat=len(positions)):
            f = dict(zip(positions, vals))
            if not any(f[x] in left_multiples(A, f[t]) for t in targets):
                fn = [A.identity] * B.order
                for p, v in f.items():
                    fn[p] = v
                return {"x": x, "f": fn}
    return None


def thm2_condition_ii(A: FiniteMonoid, B: FiniteMonoid) -> ConditionResult:
    """For all x, f some idempotent e has f(x) in A f(xe).  Checked literally."""
    E = idempotents(B)
    w = _idempotent_condition(A, B, E)
    non_identity = [e for e in E if e != B.identity]
    w_expl = _idempotent_condition(A, B, non_identity)
    extra = {
        "exploratory": {
            "note": "exploratory: e restricted to non-identity idempotents, not the stated condition",
            "holds": w_expl is None,
            "witness": w_expl,
        }
    }
    return ConditionResult("T2.ii", w is None, w, "exact", extra)


def thm2_condition_iii(
    A: FiniteMonoid, B: FiniteMonoid, *, sweep_bits: int = SWEEP_BITS
) -> ConditionResult:
    """Every (f, P, b) has P = P1 b, or P = P1 bd with d an inverse of b."""
    n_left = A.order**B.order
    n_bits = n_left * B.order
    exact = n_bits <= sweep_bits
    mode = "exact" if exact else "reduced"
    for b in range(B.order):
        masks = [shift_mask(B, n_left, b)]
        masks += [shift_mask(B, n_left, B.mul(b, d)) for d in inverse_set(B, b).inverses]
        P = _first_escape(masks, n_bits, exact)
        if P is not None:
            pairs = PairSet(n_left, B.order, P).pairs()
            w = {"b": b, "P": [[list(fn_decode(A, B, l)), y] for l, y in pairs]}
            return ConditionResult("T2.iii", False, w, mode)
    return ConditionResult("T2.iii", True, None, mode)


def thm2_verdict(A: FiniteMonoid, B: FiniteMonoid, *, sweep_bits: int = SWEEP_BITS) -> TheoremVerdict:
    conds = [
        regularity_condition(A, B, "T2.i"),
        thm2_condition_ii(A, B),
        thm2_condition_iii(A, B, sweep_bits=sweep_bits),
    ]
    return TheoremVerdict(2, all(c.holds for c in conds), conds)


def theorem_verdict(kind: str, A: FiniteMonoid, B: FiniteMonoid) -> TheoremVerdict:
    return thm1_verdict(A, B) if kind == "schutz" else thm2_verdict(A, B)


# -- brute-force oracle on the lazy product -----------------------------------


def _first_inverses(M: FiniteMonoid) -> np.ndarray:
    out = np.full(M.order, -1, dtype=np.int64)
    for a in range(M.order):
        inv = inverse_set(M, a).inverses
        if inv:
            out[a] = inv[0]
    return out


def guided_candidates(prod, codes: np.ndarray, *, first_only: bool = True) -> list[np.ndarray]:
    """Inverse candidates suggested by the regularity proofs.

    Classic product: (c, c P d, d) for c, d inverses of a, b.
    Variant: (shift(v, d), P d, d) with v a pointwise inverse of f and d an
    inverse of b.  Entries are -1 where no candidate exists.
    """
    A, B = prod.A, prod.B
    l, P, b = prod.split(codes)
    inv_b_all = [inverse_set(B, y).inverses for y in range(B.order)]
    depth = 1 if first_only else max(len(i) for i in inv_b_all)
    if isinstance(prod, SchutzProduct):
        inv_a_all = [inverse_set(A, x).inverses for x in range(A.order)]
        depth_a = 1 if first_only else max(len(i) for i in inv_a_all)
        out = []
        for i in range(depth_a):
            c = np.array([s[i] if len(s) > i else -1 for s in inv_a_all], dtype=np.int64)[l]
            for k in range(depth):
                d = np.array([s[k] if len(s) > k else -1 for s in inv_b_all], dtype=np.int64)[b]
                ok = (c >= 0) & (d >= 0)
                cc, dd = np.where(ok, c, 0), np.where(ok, d, 0)
                Q = prod.scale_table[cc, prod.shift_table[dd, P]]
                out.append(np.where(ok, prod.code(cc, Q, dd), -1))
        return out
    space = prod.space
    first_inv = _first_inverses(A)
    vals = first_inv[space.values]          # pointwise first inverse
    has_v = (vals >= 0).all(axis=1)
    v_code = (np.where(vals >= 0, vals, 0) * space.weights).sum(axis=1)
    out = []
    for k in range(depth):
        d = np.array([s[k] if len(s) > k else -1 for s in inv_b_all], dtype=np.int64)[b]
        ok = has_v[l] & (d >= 0)
        dd = np.where(ok, d, 0)
        g = space.shift_codes(v_code[l], dd)
        Q = prod.shift_table[dd, P]
        out.append(np.where(ok, prod.code(g, Q, dd), -1))
    return out


def is_inverse_pair(prod, x, y):
    """Vectorised test of xyx = x and yxy = y."""
    return (prod.mul_codes(prod.mul_codes(x, y), x) == x) & (
        prod.mul_codes(prod.mul_codes(y, x), y) == y
    )


def product_oracle(prod, *, guided: bool = True) -> tuple[bool, int | None, dict]:
    """Brute-force regularity of a lazily represented product.

    Proof-guided candidates are tried first for every element at once; the
    rest get every candidate pair, then a full scan of the carrier.
    """
    codes = prod.all_codes()
    pending = np.ones(codes.shape, dtype=bool)
    stats = {"guided_hits": 0, "full_scans": 0}
    if guided:
        for cand in guided_candidates(prod, codes, first_only=False):
            ok = cand >= 0
            ok[ok] = is_inverse_pair(prod, codes[ok], cand[ok])
            pending &= ~ok
        stats["guided_hits"] = int((~pending).sum())
    for x in np.flatnonzero(pending):
        stats["full_scans"] += 1
        if not is_inverse_pair(prod, np.int64(x), codes).any():
            return False, int(x), stats
    return True, None, stats


def inverses_by_definition(prod, x) -> list:
    """All inverses of element x using element-level multiplication only."""
    out = []
    for c in range(prod.order):
        y = prod.decode(c)
        if prod.mul(prod.mul(x, y), x) == x and prod.mul(prod.mul(y, x), y) == y:
            out.append(y)
    return out


def associativity_check(prod, seed: int) -> dict:
    if prod.order <= EXHAUSTIVE_ASSOC_ORDER:
        c = prod.all_codes()
        y, z = c[:, None], c[None, :]
        yz = prod.mul_codes(y, z)
        holds = all(
            (prod.mul_codes(prod.mul_codes(x, y), z) == prod.mul_codes(x, yz)).all()
            for x in c
        )
        return {"mode": "exhaustive", "triples": prod.order**3, "holds": holds}
    rng = np.random.default_rng(seed)
    x, y, z = rng.integers(0, prod.order, size=(3, ASSOC_SAMPLES))
    holds = bool(
        (prod.mul_codes(prod.mul_codes(x, y), z) == prod.mul_codes(x, prod.mul_codes(y, z))).all()
    )
    return {"mode": "sampled", "triples": ASSOC_SAMPLES, "holds": holds}


# -- comparison report ----------------------------------------------------------


@dataclass
class RegularityReport:
    instance: str
    kind: str
    order: int
    brute_regular: bool | None
    brute_witness: dict | None
    skipped: bool
    theorem: TheoremVerdict
    seed: int
    associativity: dict | None
    elapsed_ms: dict
    counterexample: dict | None = None

    @property
    def verdict(self) -> bool:
        return self.theorem.verdict

    @property
    def agree(self) -> bool | None:
        if self.skipped:
            return None
        return self.brute_regular == self.theorem.verdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "kind": self.kind,
            "order": self.order,
            "brute": {
                "verdict": None if self.skipped else ("regular" if self.brute_regular else "non_regular"),
                "witness": self.brute_witness,
                "skipped": self.skipped,
            },
            "conditions": [c.to_dict() for c in self.theorem.conditions],
            "verdict": self.verdict,
            "agree": self.agree,
            "reduced_mode": self.theorem.reduced_mode,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
            "associativity": self.associativity,
            "counterexample": self.counterexample,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def compare_regularity(
    A: FiniteMonoid,
    B: FiniteMonoid,
    kind: str,
    *,
    cap: int | None = MAX_ORACLE_ORDER,
    seed: int = 0,
    instance: str | None = None,
) -> RegularityReport:
    """Run the oracle and the matching theorem on one (A, B, kind)."""
    prod = make_product(kind, A, B)
    t0 = time.perf_counter()
    theorem = theorem_verdict(kind, A, B)
    t1 = time.perf_counter()
    try:
        prod.check_cap(cap)
    except CapExceeded:
        skipped, regular, witness, assoc = True, None, None, None
    else:
        skipped = False
        assoc = associativity_check(prod, seed)
        regular, wcode, _ = product_oracle(prod)
        witness = None if wcode is None else prod.describe(wcode)
    t2 = time.perf_counter()
    report = RegularityReport(
        instance=instance or f"{A.label},{B.label}",
        kind=kind,
        order=prod.order,
        brute_regular=regular,
        brute_witness=witness,
        skipped=skipped,
        theorem=theorem,
        seed=seed,
        associativity=assoc,
        elapsed_ms={
            "theorem": round((t1 - t0) * 1000, 3),
            "brute": round((t2 - t1) * 1000, 3),
            "total": round((t2 - t0) * 1000, 3),
        },
    )
    if report.agree is False:
        report.counterexample = _counterexample(prod, report)
    return report


def _counterexample(prod, report: RegularityReport) -> dict:
    if not report.brute_regular:
        return {"type": "non_regular_element", "element": report.brute_witness}
    failing = next((c for c in report.theorem.conditions if not c.holds), None)
    bundle = {
        "type": "regular_despite_failed_condition",
        "condition": failing and failing.condition_id,
        "condition_witness": failing and failing.witness,
    }
    w = (failing and failing.witness) or {}
    if isinstance(prod, SchutzProduct) and {"a", "P", "b"} <= w.keys():
        x = prod.element(w["a"], [tuple(p) for p in w["P"]], w["b"])
        c = prod.encode(x)
        hits = np.flatnonzero(is_inverse_pair(prod, np.int64(c), prod.all_codes()))
        bundle["element"] = prod.describe(c)
        bundle["inverse"] = prod.describe(int(hits[0])) if hits.size else None
    return bundle


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "elapsed_ms"}
