"""Monoid presentations as plain data, and the standard presentation of a semidirect product.

Only assembly happens here: no rewriting, no word problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InputError, SyntaxError_, UndefinedAction

Word = tuple[str, ...]
Relation = tuple[Word, Word]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = ()
    renamed: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise InputError("duplicate generator symbol")
        for lhs, rhs in self.relations:
            for s in (*lhs, *rhs):
                if s not in gens:
                    raise InputError(f"relation uses unknown symbol {s!r}")

    def __str__(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(f"{_compact(l)} = {_compact(r)}" for l, r in self.relations)
        return f"[{gens} ; {rels}]"


def _compact(word: Word) -> str:
    """x x x y -> x^3 y; empty word -> 1."""
    if not word:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        parts.append(word[i] if j - i == 1 else f"{word[i]}^{j - i}")
        i = j
    return " ".join(parts)


def build_semidirect_presentation(
    pA: Presentation,
    pB: Presentation,
    gen_action: Mapping[tuple[str, str], Sequence[str]],
) -> Presentation:
    """Generators X u Y and relations R u S u T with T = { y x = (x)theta_y y }.

    ``gen_action[(y, x)]`` is a word over X.  Symbols of Y that clash with X
    are renamed with a ``B.`` prefix; the mapping is kept in ``renamed``.
    """
    xs = set(pA.generators)
    renamed: dict[str, str] = {}
    taken = set(xs)
    for y in pB.generators:
        new = y
        while new in taken:
            new = "B." + new
        if new != y:
            renamed[y] = new
        taken.add(new)

    def ren(word: Sequence[str]) -> Word:
        return tuple(renamed.get(s, s) for s in word)

    T: list[Relation] = []
    for y in pB.generators:
        for x in pA.generators:
            if (y, x) not in gen_action:
                raise UndefinedAction(y, x)
            image = tuple(gen_action[(y, x)])
            for s in image:
                if s not in xs:
                    raise InputError(f"({x})theta_{y} uses {s!r}, which is not a generator of A")
            yy = renamed.get(y, y)
            T.append(((yy, x), (*image, yy)))
    S = [(ren(l), ren(r)) for l, r in pB.relations]
    return Presentation(
        generators=pA.generators + tuple(renamed.get(y, y) for y in pB.generators),
        relations=tuple(pA.relations) + tuple(S) + tuple(T),
        renamed=renamed,
    )


def format_presentation(p: Presentation) -> str:
    lines = [" ".join(p.generators)]
    for lhs, rhs in p.relations:
        lines.append(f"{' '.join(lhs) or '1'} = {' '.join(rhs) or '1'}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise SyntaxError_(1, "missing generator line")
    gens = tuple(lines[0].split())
    rels: list[Relation] = []
    for no, ln in enumerate(lines[1:], start=2):
        if not ln.strip() or ln.lstrip().startswith("#"):
            continue
        if ln.count("=") != 1:
            raise SyntaxError_(no, "expected exactly one '='")
        l, r = ln.split("=")
        rels.append((_word(l), _word(r)))
    try:
        return Presentation(gens, tuple(rels))
    except InputError as exc:
        raise SyntaxError_(1, str(exc)) from None


def _word(s: str) -> Word:
    toks = s.split()
    return () if toks == ["1"] else tuple(toks)
