"""Acceptance criteria 1-13.  Each test prints a single PASS/FAIL line."""

import itertools
import json
import time

import numpy as np

from monoidlab import cli
from monoidlab.catalog import A058129, canonical_form, enumerate_monoids, named, recount_unpruned
from monoidlab.monoid import is_group, is_regular, validate_table
from monoidlab.presentation import Presentation, build_semidirect_presentation
from monoidlab.products import fn_mul, fn_power, fn_shift, iter_functions, wreath_product
from monoidlab.schutz import PairSet, SchutzProduct
from monoidlab.theorems import (
    compare_regularity,
    exists_form_aP1b,
    exists_form_aP1b_bruteforce,
    strip_timing,
    thm1_condition_ii,
)

# Wall-clock budgets (seconds).
BUDGET_AC1 = 5.0
BUDGET_AC5 = 60.0


# Collected for the terminal summary (see conftest.py).
RESULTS: list[str] = []


def verdict(n, ok, detail):
    line = f"AC{n:>2} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS.append(line)
    print("\n" + line)
    assert ok, detail


def flat_key(M):
    n = M.order
    return canonical_form(tuple(M.table.flatten().tolist()), n)


def test_ac01_construction_laws():
    Z2 = named("zn:2")
    t0 = time.perf_counter()
    prod = SchutzProduct(Z2, Z2)
    c = prod.all_codes()
    T = prod.mul_codes(c[:, None], c[None, :])
    M = validate_table(T, "Z2<>Z2", assoc="exhaustive")
    e = M.identity
    identity_ok = bool((M.table[e] == c).all() and (M.table[:, e] == c).all())
    # Independent associativity check on the raw table: (xy)z == x(yz) for all triples.
    lhs = T[T[:, :, None], np.arange(64)[None, None, :]]
    rhs = T[np.arange(64)[:, None, None], T[None, :, :]]
    assoc_ok = bool((lhs == rhs).all())
    elapsed = time.perf_counter() - t0
    ok = M.order == 64 and e == prod.identity_code and identity_ok and assoc_ok and elapsed < BUDGET_AC1
    verdict(1, ok, f"order={M.order} identity={identity_ok} assoc={assoc_ok} time={elapsed:.2f}s")


def test_ac02_theorem1_positive():
    Z2 = named("zn:2")
    r = compare_regularity(Z2, Z2, "schutz")
    ok = r.brute_regular is True and r.verdict is True and r.agree is True
    verdict(2, ok, f"brute={r.brute_regular} thm1={r.verdict} agree={r.agree}")


def test_ac03_theorem1_negative():
    U1 = named("u1")  # 0 = id, 1 = zero
    r = compare_regularity(U1, U1, "schutz")
    expected = {"a": 1, "P": [[0, 0]], "b": 0}
    c2 = thm1_condition_ii(U1, U1)
    same_family = (
        c2.witness is not None
        and c2.witness["a"] == expected["a"]
        and c2.witness["b"] == expected["b"]
        and c2.witness["P"] == expected["P"]
    )
    ok = (
        r.brute_regular is False
        and r.brute_witness == expected
        and not c2.holds
        and same_family
        and r.agree is True
    )
    verdict(3, ok, f"brute witness={r.brute_witness} T1.ii witness={c2.witness} agree={r.agree}")


def test_ac04_condition_i_necessity():
    M3, Z2 = named("monogenic:2,1"), named("zn:2")
    r = compare_regularity(M3, Z2, "schutz")
    c1 = r.theorem.condition("T1.i")
    expected_order = 3 * 2 ** (3 * 2) * 2
    ok = (
        r.order == expected_order
        and r.brute_regular is False
        and r.verdict is False
        and not c1.holds
        and c1.witness["monoid"] == "A"
        and r.agree is True
    )
    verdict(4, ok, f"order={r.order} (3*2^6*2={expected_order}) brute={r.brute_regular} T1.i={c1.holds}")


def test_ac05_theorem2_positive():
    Z2 = named("zn:2")
    t0 = time.perf_counter()
    r = compare_regularity(Z2, Z2, "variant")
    elapsed = time.perf_counter() - t0
    ok = (
        r.order == 2048
        and r.brute_regular is True
        and r.verdict is True
        and r.agree is True
        and elapsed < BUDGET_AC5
    )
    verdict(5, ok, f"order={r.order} brute={r.brute_regular} thm2={r.verdict} time={elapsed:.2f}s")


def test_ac06_theorem2_negative():
    Z2, U1 = named("zn:2"), named("u1")
    r = compare_regularity(Z2, U1, "variant")
    # (1-bar, {(1-bar, id)}, zero): constant-identity f, U1 identity 0, zero 1.
    expected = {"f": [0, 0], "P": [[[0, 0], 0]], "b": 1}
    c3 = r.theorem.condition("T2.iii")
    ok = r.brute_regular is False and r.brute_witness == expected and not c3.holds and r.agree is True
    verdict(6, ok, f"brute witness={r.brute_witness} T2.iii holds={c3.holds} agree={r.agree}")


def test_ac07_shift_properties():
    failures = checked = 0
    monoids = [M for n in (1, 2, 3) for M in enumerate_monoids(n)]
    for A, B in itertools.product(monoids, monoids):
        fns = list(iter_functions(A, B))
        for f, g in itertools.product(fns, fns):
            for b1, b2 in itertools.product(range(B.order), repeat=2):
                checked += 1
                if fn_shift(B, fn_shift(B, f, b2), b1) != fn_shift(B, f, B.mul(b1, b2)):
                    failures += 1
                if fn_shift(B, fn_mul(A, f, g), b1) != fn_mul(A, fn_shift(B, f, b1), fn_shift(B, g, b1)):
                    failures += 1
    verdict(7, failures == 0, f"{checked} (f,g,b1,b2) cases, {failures} failures")


def test_ac08_reduction_soundness():
    monoids = [M for n in (1, 2, 3) for M in enumerate_monoids(n)]
    mismatches = cases = 0
    for A, B in itertools.product(monoids, monoids):
        if A.order * B.order > 9:
            continue
        n_bits = A.order * B.order
        for a, b in itertools.product(range(A.order), range(B.order)):
            for code in range(1 << n_bits):
                P = PairSet(A.order, B.order, code)
                cases += 1
                if exists_form_aP1b(A, B, P, a, b) != exists_form_aP1b_bruteforce(A, B, P, a, b):
                    mismatches += 1
    verdict(8, mismatches == 0, f"{cases} (P,a,b) cases, {mismatches} mismatches")


def test_ac09_wreath_sanity():
    Z2 = named("zn:2")
    W = wreath_product(Z2, Z2)
    n = W.order
    perms = all(sorted(row) == list(range(n)) for row in W.table.tolist()) and all(
        sorted(col) == list(range(n)) for col in W.table.T.tolist()
    )
    ok = n == 8 and perms and is_group(W) and is_regular(W).regular
    verdict(9, ok, f"order={n} latin={perms} regular={is_regular(W).regular}")


def test_ac10_pointwise_regularity():
    Z2 = named("zn:2")
    results = {}
    for spec in ("zn:2", "u1", "t2"):
        results[spec] = is_regular(fn_power(named(spec), Z2)).regular
    verdict(10, all(results.values()), f"A^(+Z2) regular: {results}")


def _sweep_dir(tmp_path, name):
    out = tmp_path / name
    code = cli.main(["sweep", "--max-order", "2", "--kind", "both", "-o", str(out)])
    return code, out


def test_ac11_sweep_harness(tmp_path, capsys):
    code1, d1 = _sweep_dir(tmp_path, "run1")
    code2, d2 = _sweep_dir(tmp_path, "run2")
    capsys.readouterr()
    f1 = sorted(p.name for p in d1.glob("*.json"))
    f2 = sorted(p.name for p in d2.glob("*.json"))
    reports1 = {n: json.loads((d1 / n).read_text()) for n in f1}
    reports2 = {n: json.loads((d2 / n).read_text()) for n in f2}
    same = f1 == f2 and all(
        json.dumps(strip_timing(reports1[n]), sort_keys=True)
        == json.dumps(strip_timing(reports2[n]), sort_keys=True)
        for n in f1
    )
    instances = {(d["instance"], d["kind"]) for d in reports1.values()}
    expected = {
        (f"{a},{b}", k)
        for a, b in itertools.product(["trivial", "zn:2", "u1"], repeat=2)
        for k in ("schutz", "variant")
    }
    all_agree = all(d["agree"] is True for d in reports1.values())
    ok = code1 == 0 and code2 == 0 and len(f1) == 18 and instances == expected and same and all_agree
    verdict(11, ok, f"reports={len(f1)} deterministic={same} all_agree={all_agree}")


def test_ac12_catalog():
    two = enumerate_monoids(2)
    got = sorted(flat_key(M) for M in two)
    want = sorted(flat_key(named(s)) for s in ("zn:2", "u1"))
    three = len(enumerate_monoids(3))
    _, recount = recount_unpruned(3)
    ok = got == want and three == recount == A058129[3]
    verdict(12, ok, f"n=2 {{Z2,U1}}={got == want}; n=3 count={three} recount={recount} OEIS={A058129[3]}")


def test_ac13_presentation():
    pA = Presentation(("x",), ((("x", "x", "x"), ()),))
    pB = Presentation(("y",), ((("y", "y"), ()),))
    out = build_semidirect_presentation(pA, pB, {("y", "x"): ("x", "x")})
    T = [r for r in out.relations if r not in pA.relations and r not in pB.relations]
    ok = str(out) == "[x, y ; x^3 = 1, y^2 = 1, y x = x^2 y]" and len(T) == 1
    verdict(13, ok, f"{out} |T|={len(T)}")
