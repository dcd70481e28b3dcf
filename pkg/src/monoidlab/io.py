"""Text formats: ``.mon`` tables, ``.act`` actions, decoding sidecars, atomic writes."""

from __future__ import annotations

import os
import re
import tempfile
from pathlib import Path

from .errors import EntryOutOfRange, InputError, SyntaxError_
from .monoid import FiniteMonoid, validate_table
from .products import EndoAction, validate_action


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _int_tokens(line: str, lineno: int) -> list[int]:
    out = []
    for m in re.finditer(r"\S+", line):
        try:
            out.append(int(m.group()))
        except ValueError:
            raise SyntaxError_(lineno, f"expected an integer, got {m.group()!r}", m.start() + 1) from None
    return out


def parse_mon_text(text: str, label: str = "") -> FiniteMonoid:
    """Parse ``.mon`` text: n, then n rows of n indices, then optional '#' lines."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise SyntaxError_(1, "missing order line")
    head = _int_tokens(lines[0], 1)
    if len(head) != 1 or head[0] < 1:
        raise SyntaxError_(1, "first line must be a single positive integer")
    n = head[0]
    rows = []
    for i in range(n):
        lineno = i + 2
        if lineno > len(lines):
            raise SyntaxError_(lineno, f"expected {n} table rows, file ends early")
        row = _int_tokens(lines[lineno - 1], lineno)
        if len(row) != n:
            raise SyntaxError_(lineno, f"expected {n} entries, got {len(row)}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise EntryOutOfRange(i, j, v, line=lineno)
        rows.append(row)
    for lineno, ln in enumerate(lines[n + 1 :], start=n + 2):
        if ln.strip() and not ln.lstrip().startswith("#"):
            raise SyntaxError_(lineno, "only '#' comment lines may follow the table")
    return validate_table(rows, label)


def parse_monoid_file(path: str | Path) -> FiniteMonoid:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_mon_text(text, path.stem)


def format_mon(M: FiniteMonoid, comment: str | None = None) -> str:
    lines = [str(M.order)]
    lines += [" ".join(str(v) for v in row) for row in M.table.tolist()]
    if comment:
        lines.append(f"# {comment}")
    return "\n".join(lines) + "\n"


def format_sidecar(M: FiniteMonoid) -> str:
    """One decoded element per line, in flat-index order."""
    if M.elements is None:
        raise InputError(f"{M.label!r} carries no decoding")
    return "".join(" ".join(_flat(e)) + "\n" for e in M.elements)


def _flat(e) -> list[str]:
    out: list[str] = []
    for part in e:
        if isinstance(part, tuple):
            out.append("[" + ",".join(str(v) for v in part) + "]")
        else:
            out.append(str(part))
    return out


def write_mon(M: FiniteMonoid, path: str | Path, *, sidecar: bool = True) -> list[Path]:
    path = Path(path)
    write_atomic(path, format_mon(M, comment=M.label or None))
    written = [path]
    if sidecar and M.elements is not None:
        dec = path.with_suffix(".dec")
        write_atomic(dec, format_sidecar(M))
        written.append(dec)
    return written


def parse_action_text(text: str, A: FiniteMonoid, B: FiniteMonoid) -> EndoAction:
    """``.act``: '|A| |B|', then |B| lines giving theta_b as |A| images."""
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise SyntaxError_(1, "empty action file")
    head = _int_tokens(lines[0], 1)
    if head != [A.order, B.order]:
        raise SyntaxError_(1, f"header must be '{A.order} {B.order}'")
    maps = []
    for k in range(B.order):
        lineno = k + 2
        if lineno > len(lines):
            raise SyntaxError_(lineno, "file ends before all maps are given")
        row = _int_tokens(lines[lineno - 1], lineno)
        if len(row) != A.order or any(not 0 <= v < A.order for v in row):
            raise SyntaxError_(lineno, f"expected {A.order} images in [0,{A.order})")
        maps.append(row)
    return validate_action(A, B, maps)


def parse_action_file(path: str | Path, A: FiniteMonoid, B: FiniteMonoid) -> EndoAction:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_action_text(text, A, B)


def format_action(action: EndoAction) -> str:
    lines = [f"{action.A.order} {action.B.order}"]
    lines += [" ".join(str(v) for v in m) for m in action.maps]
    return "\n".join(lines) + "\n"


def is_path_argument(arg: str) -> bool:
    return "/" in arg or os.sep in arg or arg.endswith(".mon")


def resolve_monoid(arg: str) -> FiniteMonoid:
    """A ``.mon`` path or a catalog spec like ``zn:2``."""
    if is_path_argument(arg):
        return parse_monoid_file(arg)
    from .catalog import named  # catalog imports this module

    return named(arg)
