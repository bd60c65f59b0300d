"""Parser for the Young-function spec mini-language.

Grammar (UTF-8, locale independent):

    spec  := ident [ '(' arg { ',' arg } ')' ]
    arg   := key '=' (number | string | spec)
    ident := lowercase ASCII identifier
    number: decimal with optional sign, fraction and exponent
    string: single- or double-quoted, no escapes

Parse errors carry the byte offset and the expected-token set. Trees
round-trip: parse(print_tree(tree)) == tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .young import FAMILIES, SpecError, YoungFunctionSpec

_IDENT = re.compile(r"[a-z_][a-z0-9_]*")
_NUMBER = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_STRING = re.compile(r"'[^']*'|\"[^\"]*\"")


class ParseError(SpecError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        exp = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at offset {offset}{exp}")


@dataclass(frozen=True)
class SpecExpression:
    """Parsed tree: identifier plus named arguments (numbers, strings, sub-trees)."""

    ident: str
    args: tuple = field(default_factory=tuple)  # tuple of (key, value) pairs

    def arg_dict(self) -> dict:
        return dict(self.args)


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _parse_spec(text: str, i: int, known: tuple[str, ...]) -> tuple[SpecExpression, int]:
    i = _skip_ws(text, i)
    m = _IDENT.match(text, i)
    if not m:
        raise ParseError("expected identifier", i, ("identifier",))
    ident = m.group(0)
    if known and ident not in known:
        raise ParseError(f"unknown identifier {ident!r}", i, known)
    i = m.end()
    i = _skip_ws(text, i)
    if i >= len(text) or text[i] != "(":
        return SpecExpression(ident), i
    i += 1
    args = []
    i = _skip_ws(text, i)
    if i < len(text) and text[i] == ")":
        return SpecExpression(ident, tuple(args)), i + 1
    while True:
        i = _skip_ws(text, i)
        m = _IDENT.match(text, i)
        if not m:
            raise ParseError("expected argument name", i, ("key",))
        key = m.group(0)
        i = _skip_ws(text, m.end())
        if i >= len(text) or text[i] != "=":
            raise ParseError("expected '='", i, ("'='",))
        i = _skip_ws(text, i + 1)
        if i >= len(text):
            raise ParseError("expected value", i, ("number", "string", "spec"))
        ch = text[i]
        if ch in "'\"":
            m2 = _STRING.match(text, i)
            if not m2:
                raise ParseError("unterminated string", i, ("string",))
            args.append((key, m2.group(0)[1:-1]))
            i = m2.end()
        elif ch.isdigit() or ch in "+-.":
            m2 = _NUMBER.match(text, i)
            if not m2:
                raise ParseError("expected number", i, ("number",))
            args.append((key, float(m2.group(0))))
            i = m2.end()
        elif _IDENT.match(text, i):
            sub, i = _parse_spec(text, i, known)
            args.append((key, sub))
        else:
            raise ParseError("expected value", i, ("number", "string", "spec"))
        i = _skip_ws(text, i)
        if i < len(text) and text[i] == ",":
            i += 1
            continue
        if i < len(text) and text[i] == ")":
            return SpecExpression(ident, tuple(args)), i + 1
        raise ParseError("expected ',' or ')'", i, ("','", "')'"))


def parse_spec(text: str, known: tuple[str, ...] = FAMILIES) -> SpecExpression:
    """Parse a spec string; raises ParseError with byte offset on failure."""
    tree, i = _parse_spec(text, 0, known)
    i = _skip_ws(text, i)
    if i != len(text):
        raise ParseError("trailing input", i, ("end of input",))
    return tree


def _fmt_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def print_tree(tree: SpecExpression) -> str:
    """Canonical text form; parse(print_tree(t)) == t."""
    if not tree.args:
        return f"{tree.ident}()"
    parts = []
    for key, val in tree.args:
        if isinstance(val, SpecExpression):
            parts.append(f"{key}={print_tree(val)}")
        elif isinstance(val, str):
            parts.append(f"{key}='{val}'")
        else:
            parts.append(f"{key}={_fmt_number(val)}")
    return f"{tree.ident}({', '.join(parts)})"


def to_young_spec(tree: SpecExpression) -> YoungFunctionSpec:
    """Convert a parse tree into a validated YoungFunctionSpec."""
    params = {}
    zero = inf_ = None
    path = None
    for key, val in tree.args:
        if isinstance(val, SpecExpression):
            sub = to_young_spec(val)
            if key == "zero":
                zero = sub
            elif key == "inf":
                inf_ = sub
            else:
                raise SpecError(f"nested spec not allowed for parameter {key!r}")
        elif isinstance(val, str):
            if key != "path":
                raise SpecError(f"string value not allowed for parameter {key!r}")
            path = val
        else:
            params[key] = float(val)
    return YoungFunctionSpec(tree.ident, params, zero_spec=zero, inf_spec=inf_, path=path)


def parse_young(text: str):
    """Parse and build in one step (convenience for the CLI and tests)."""
    from .young import make_young

    return make_young(to_young_spec(parse_spec(text)))
