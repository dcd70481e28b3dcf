"""Command-line entry point.

Exit codes: 0 success, 1 a requested check found a violation or disagreement
(reports are still written), 2 input or cap error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import catalog
from .errors import (
    CapExceeded,
    EntryOutOfRange,
    InputError,
    NoIdentity,
    NonAssociative,
)
from .io import (
    format_mon,
    parse_action_file,
    parse_monoid_file,
    resolve_monoid,
    write_atomic,
    write_mon,
)
from .monoid import (
    MAX_ORACLE_ORDER,
    FiniteMonoid,
    idempotents,
    inverse_set,
    is_commutative,
    is_group,
    is_regular,
)
from .products import direct_product, semidirect_product, wreath_product
from .schutz import make_product
from .theorems import compare_regularity, product_oracle, thm1_verdict, thm2_verdict

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class UsageError(InputError):
    pass


def _monoid_args(items: Sequence[str], names: Sequence[str]) -> dict[str, FiniteMonoid]:
    """Resolve ``NAME=spec`` arguments (a bare value fills the next free name)."""
    out: dict[str, str] = {}
    free = list(names)
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            key, value = (free[0] if free else ""), item
        if key not in names:
            raise UsageError(f"unexpected monoid argument {item!r}; expected {', '.join(names)}")
        if key in out:
            raise UsageError(f"{key} given twice")
        out[key] = value
        free = [n for n in free if n != key]
    missing = [n for n in names if n not in out]
    if missing:
        raise UsageError(f"missing monoid argument(s): {', '.join(missing)}")
    return {k: resolve_monoid(v) for k, v in out.items()}


def _cap(args) -> int | None:
    return None if args.no_cap else args.cap


def _emit(args, text: str, payload: dict | None = None) -> None:
    if args.format == "json" and payload is not None:
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if args.output and args.command not in ("product", "sweep", "catalog"):
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


# -- verbs --------------------------------------------------------------------


def cmd_validate(args) -> int:
    status = EXIT_OK
    lines = []
    for path in args.files:
        try:
            M = parse_monoid_file(path)
        except (NonAssociative, NoIdentity, EntryOutOfRange) as exc:
            lines.append(f"invalid {path}: {exc}")
            status = max(status, EXIT_VIOLATION)
        except InputError as exc:
            lines.append(f"error {path}: {exc}")
            status = EXIT_INPUT
        else:
            lines.append(f"ok {path}: order {M.order}, identity {M.identity}")
    _emit(args, "\n".join(lines) + "\n")
    return status


def cmd_info(args) -> int:
    M = _monoid_args(args.monoid, ["M"])["M"]
    verdict = is_regular(M, cap=_cap(args))
    inverses = {a: list(inverse_set(M, a).inverses) for a in range(M.order)}
    payload = {
        "label": M.label,
        "order": M.order,
        "identity": M.identity,
        "idempotents": list(idempotents(M)),
        "group": is_group(M),
        "commutative": is_commutative(M),
        "regular": verdict.regular,
        "witness": verdict.witness,
        "inverses": {str(a): v for a, v in inverses.items()},
    }
    lines = [
        f"monoid {M.label}: order {M.order}, identity {M.identity}",
        f"idempotents: {' '.join(map(str, payload['idempotents']))}",
        f"group: {payload['group']}  commutative: {payload['commutative']}",
        f"regular: {verdict.regular}" + ("" if verdict.regular else f" (witness {verdict.witness})"),
    ]
    lines += [f"  inverses({a}) = {{{', '.join(map(str, v))}}}" for a, v in inverses.items()]
    _emit(args, "\n".join(lines) + "\n", payload)
    return EXIT_OK


def _build(kind: str, A: FiniteMonoid, B: FiniteMonoid, args) -> FiniteMonoid:
    cap = _cap(args)
    if kind == "direct":
        return direct_product(A, B, cap=cap)
    if kind == "semidirect":
        if not args.action:
            raise UsageError("semidirect products need --action FILE")
        return semidirect_product(A, B, parse_action_file(args.action, A, B), cap=cap, seed=args.seed)
    if kind == "wreath":
        return wreath_product(A, B, cap=cap, seed=args.seed)
    return make_product(kind, A, B).monoid(cap=cap, seed=args.seed)


def cmd_product(args) -> int:
    ms = _monoid_args(args.monoid, ["A", "B"])
    P = _build(args.kind, ms["A"], ms["B"], args)
    if args.output:
        written = write_mon(P, args.output)
        sys.stdout.write(
            f"wrote {P.label}: order {P.order}, identity {P.identity} -> "
            + ", ".join(str(p) for p in written) + "\n"
        )
    else:
        sys.stdout.write(format_mon(P, comment=P.label))
    return EXIT_OK


def cmd_regular(args) -> int:
    if args.product:
        ms = _monoid_args(args.monoid, ["A", "B"])
        if args.product in ("schutz", "variant"):
            prod = make_product(args.product, ms["A"], ms["B"])
            prod.check_cap(_cap(args))
            regular, wcode, _ = product_oracle(prod)
            witness = None if wcode is None else prod.describe(wcode)
            label, order = prod.label, prod.order
        else:
            M = _build(args.product, ms["A"], ms["B"], args)
            v = is_regular(M, cap=_cap(args))
            regular, label, order = v.regular, M.label, M.order
            witness = None if v.regular else {"index": v.witness, "element": M.elements[v.witness]}
    else:
        M = _monoid_args(args.monoid, ["M"])["M"]
        v = is_regular(M, cap=_cap(args))
        regular, label, order = v.regular, M.label, M.order
        witness = None if v.regular else {"index": v.witness}
    payload = {"monoid": label, "order": order, "regular": regular, "witness": witness}
    text = f"{label} (order {order}): {'regular' if regular else 'non_regular'}\n"
    if witness is not None:
        text += f"witness: {json.dumps(witness)}\n"
    _emit(args, text, payload)
    if args.expect and (args.expect == "regular") != regular:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_theorem(args) -> int:
    ms = _monoid_args(args.monoid, ["A", "B"])
    fn = thm1_verdict if args.which == 1 else thm2_verdict
    tv = fn(ms["A"], ms["B"])
    payload = {
        "which": tv.which,
        "A": ms["A"].label,
        "B": ms["B"].label,
        "verdict": tv.verdict,
        "reduced_mode": tv.reduced_mode,
        "conditions": [c.to_dict() for c in tv.conditions],
    }
    lines = [f"theorem {tv.which} on ({ms['A'].label}, {ms['B'].label}): verdict {tv.verdict}"]
    for c in tv.conditions:
        w = "" if c.witness is None else f"  witness {json.dumps(c.witness)}"
        lines.append(f"  {c.condition_id}: {'holds' if c.holds else 'fails'} [{c.mode}]{w}")
    _emit(args, "\n".join(lines) + "\n", payload)
    if args.expect and (args.expect == "true") != tv.verdict:
        return EXIT_VIOLATION
    return EXIT_OK


def _sweep_one(job: tuple[str, str, str, int | None, int]) -> tuple[str, str, str, str, dict]:
    a_spec, b_spec, kind, cap, seed = job
    A, B = resolve_monoid(a_spec), resolve_monoid(b_spec)
    r = compare_regularity(A, B, kind, cap=cap, seed=seed, instance=f"{a_spec},{b_spec}")
    return a_spec, b_spec, kind, r.to_json(), r.to_dict()


def _safe(name: str) -> str:
    return name.replace(":", "_").replace(",", "-").replace("/", "_")


def cmd_sweep(args) -> int:
    if args.source == "enumerated":
        specs = [
            M.label for n in range(1, min(args.max_order, 4) + 1) for M in catalog.enumerate_monoids(n)
        ]
    else:
        specs = [e.name for e in catalog.named_catalog(args.max_order)]
    kinds = ["schutz", "variant"] if args.kind == "both" else [args.kind]
    jobs = [(a, b, k, _cap(args), args.seed) for k in kinds for a in specs for b in specs]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    out = Path(args.output or "sweep-out")
    summary = []
    disagreements = 0
    for a, b, kind, text, d in results:
        write_atomic(out / f"{_safe(a)}__{_safe(b)}__{kind}.json", text)
        brute = d["brute"]["verdict"] if not d["brute"]["skipped"] else "skipped"
        agree = {True: "true", False: "false", None: "n/a"}[d["agree"]]
        disagreements += d["agree"] is False
        summary.append(f"{a},{b},{kind},{d['order']},{brute},{str(d['verdict']).lower()},{agree}")
    write_atomic(out / "summary.csv", "\n".join(summary) + "\n")
    agreed = sum(1 for *_, d in results if d["agree"] is True)
    sys.stdout.write("\n".join(summary) + "\n")
    sys.stdout.write(
        f"{len(results)} reports in {out}; agree {agreed}, disagree {disagreements}, "
        f"skipped {sum(1 for *_, d in results if d['agree'] is None)}\n"
    )
    return EXIT_VIOLATION if disagreements else EXIT_OK


def cmd_catalog(args) -> int:
    if args.enumerate:
        entries = [
            catalog.CatalogEntry.of(M.label, M)
            for M in catalog.enumerate_monoids(args.enumerate, up_to_iso=not args.labeled)
        ]
    else:
        entries = catalog.named_catalog(args.max_order)
    lines = [
        f"{e.name:16} order {e.monoid.order}  regular={e.regular} group={e.group} "
        f"commutative={e.commutative} idempotents={e.idempotent_count}"
        for e in entries
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    if args.export:
        catalog.export_catalog(args.export, entries)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=MAX_ORACLE_ORDER, help="carrier size cap")
    common.add_argument("--no-cap", action="store_true", help="disable the carrier size cap")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled associativity checks")
    common.add_argument("-o", "--output", help="output file (directory for sweep)")
    common.add_argument("--format", choices=["text", "json"], default="text")

    p = argparse.ArgumentParser(prog="monoidlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check .mon files")
    s.add_argument("files", nargs="+")

    s = sub.add_parser("info", parents=[common], help="describe one monoid")
    s.add_argument("monoid", nargs=1, metavar="M")

    s = sub.add_parser("product", parents=[common], help="build a product monoid")
    s.add_argument("--kind", required=True, choices=["direct", "semidirect", "wreath", "schutz", "variant"])
    s.add_argument("--action", help=".act file for semidirect products")
    s.add_argument("monoid", nargs=2, metavar="A=SPEC|B=SPEC")

    s = sub.add_parser("regular", parents=[common], help="brute-force regularity")
    s.add_argument("--product", choices=["direct", "semidirect", "wreath", "schutz", "variant"])
    s.add_argument("--action", help=".act file for semidirect products")
    s.add_argument("--expect", choices=["regular", "non_regular"])
    s.add_argument("monoid", nargs="+", metavar="SPEC")

    s = sub.add_parser("theorem", parents=[common], help="evaluate a theorem's conditions")
    s.add_argument("--which", type=int, choices=[1, 2], required=True)
    s.add_argument("--expect", choices=["true", "false"])
    s.add_argument("monoid", nargs=2, metavar="A=SPEC|B=SPEC")

    s = sub.add_parser("sweep", parents=[common], help="compare oracle and theorems over catalog pairs")
    s.add_argument("--max-order", type=int, default=2)
    s.add_argument("--kind", choices=["schutz", "variant", "both"], default="both")
    s.add_argument("--source", choices=["named", "enumerated"], default="named")
    s.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("catalog", parents=[common], help="list or export catalog monoids")
    s.add_argument("--max-order", type=int)
    s.add_argument("--enumerate", type=int, metavar="N")
    s.add_argument("--labeled", action="store_true", help="with --enumerate: all labeled tables")
    s.add_argument("--export", metavar="DIR")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "product": cmd_product,
    "regular": cmd_regular,
    "theorem": cmd_theorem,
    "sweep": cmd_sweep,
    "catalog": cmd_catalog,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CapExceeded as exc:
        print(f"error: {exc} (raise --cap or pass --no-cap)", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
