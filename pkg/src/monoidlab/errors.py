"""Exception hierarchy shared by every module.

The CLI maps ``InputError`` subclasses to exit code 2.
"""

from __future__ import annotations


class MonoidLabError(Exception):
    pass


class InputError(MonoidLabError):
    """Malformed input: bad table, bad file, bad parameters, size caps."""


class EntryOutOfRange(InputError):
    def __init__(self, i: int, j: int, value: object, line: int | None = None):
        self.i, self.j, self.value, self.line = i, j, value, line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"entry ({i},{j}) = {value!r} out of range{where}")


class NonAssociative(InputError):
    def __init__(self, i: int, j: int, k: int, left: int, right: int):
        self.triple = (i, j, k)
        self.left, self.right = left, right
        super().__init__(
            f"not associative at ({i},{j},{k}): ({i}*{j})*{k} = {left} "
            f"but {i}*({j}*{k}) = {right}"
        )


class NoIdentity(InputError):
    def __init__(self) -> None:
        super().__init__("table has no two-sided identity")


class ForeignElement(InputError):
    pass


class CapExceeded(InputError):
    def __init__(self, required: int, cap: int, what: str = "carrier"):
        self.required, self.cap = required, cap
        super().__init__(f"{what} size {required} exceeds cap {cap}")


class NotEndomorphism(InputError):
    def __init__(self, b: int, x: int | None, y: int | None, reason: str = ""):
        self.b, self.x, self.y = b, x, y
        if x is None:
            msg = f"theta_{b} is not an endomorphism: {reason}"
        else:
            msg = f"theta_{b}({x}*{y}) != theta_{b}({x})*theta_{b}({y})"
        super().__init__(msg)


class IdentityActionBroken(InputError):
    def __init__(self, a: int):
        self.a = a
        super().__init__(f"theta of the identity moves element {a}")


class CompositionLawBroken(InputError):
    def __init__(self, b1: int, b2: int, a: int):
        self.b1, self.b2, self.a = b1, b2, a
        super().__init__(
            f"theta_({b1}*{b2})({a}) != theta_{b1}(theta_{b2}({a}))"
        )


class UndefinedAction(InputError):
    def __init__(self, y: str, x: str):
        self.y, self.x = y, x
        super().__init__(f"no image given for ({x})theta_{y}")


class MixedParents(InputError):
    pass


class SyntaxError_(InputError):
    """File grammar violation; carries the 1-based line number."""

    def __init__(self, line: int, message: str, column: int | None = None):
        self.line, self.column = line, column
        col = f", column {column}" if column is not None else ""
        super().__init__(f"line {line}{col}: {message}")


class UnknownSpec(InputError):
    pass


class BadParameter(InputError):
    pass


class BadOrder(InputError):
    pass
