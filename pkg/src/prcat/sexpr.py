"""S-expression reading and printing for objects, terms and values."""

from __future__ import annotations

import dataclasses
import re

from . import core as C


class ParseError(ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.line, self.column = line, column


@dataclasses.dataclass
class Atom:
    text: str
    line: int
    column: int

    @property
    def is_nat(self):
        return self.text.isdigit()


@dataclasses.dataclass
class SList:
    items: list
    line: int
    column: int

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    @property
    def head(self):
        if self.items and isinstance(self.items[0], Atom):
            return self.items[0].text
        return None


MAX_DEPTH = 256  # far beyond hand-written or printed forms; keeps resolution off the C stack limit

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def read_all(text: str) -> list:
    """Read every top-level datum in ``text``."""
    stack = [SList([], 1, 1)]
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern matches any character
            raise ParseError("unreadable input", line, col)
        tok = m.group()
        if tok == "(":
            if len(stack) > MAX_DEPTH:
                raise ParseError(f"nested deeper than {MAX_DEPTH}", line, col)
            stack.append(SList([], line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].items.append(done)
        elif not tok[0].isspace() and tok[0] != ";":
            stack[-1].items.append(Atom(tok, line, col))
        newlines = tok.count("\n")
        if newlines:
            line += newlines
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    if len(stack) > 1:
        open_ = stack[-1]
        raise ParseError("unclosed '('", open_.line, open_.column)
    return stack[0].items


def read_one(text: str):
    data = read_all(text)
    if len(data) != 1:
        raise ParseError(f"expected one expression, found {len(data)}")
    return data[0]


# --------------------------------------------------------------------------- #
# printing
# --------------------------------------------------------------------------- #

def print_obj(o: C.Obj) -> str:
    if isinstance(o, C.Unit):
        return "one"
    if isinstance(o, C.Nat):
        return "nat"
    if isinstance(o, C.Prod):
        return f"(x {print_obj(o.left)} {print_obj(o.right)})"
    if isinstance(o, C.Sub):
        return f"(sub {print_obj(o.base)} {print_term(o.chi)})"
    return f"<?{type(o).__name__}>"


def print_term(t: C.MapTerm) -> str:
    if isinstance(t, C.Zero):
        return "zero"
    if isinstance(t, C.Succ):
        return "succ"
    if isinstance(t, C.Id):
        return f"(id {print_obj(t.obj)})"
    if isinstance(t, C.Bang):
        return f"(bang {print_obj(t.obj)})"
    if isinstance(t, C.Diag):
        return f"(diag {print_obj(t.obj)})"
    if isinstance(t, C.ProjL):
        return f"(proj-l {print_obj(t.left)} {print_obj(t.right)})"
    if isinstance(t, C.ProjR):
        return f"(proj-r {print_obj(t.left)} {print_obj(t.right)})"
    if isinstance(t, C.Comp):
        return f"(comp {print_term(t.g)} {print_term(t.f)})"
    if isinstance(t, C.ProdMap):
        return f"(prod {print_term(t.f)} {print_term(t.g)})"
    if isinstance(t, C.Iter):
        return f"(iter {print_term(t.f)})"
    if isinstance(t, C.Pr):
        return f"(pr {print_term(t.g)} {print_term(t.h)})"
    if isinstance(t, C.Incl):
        return f"(incl {print_obj(t.src)} {print_obj(t.dst)})"
    return f"<?{type(t).__name__}>"


def parse_value(text: str):
    """Read a value literal: ``()``, ``7`` or dotted pairs ``(3 . 4)``."""
    datum = read_one(text)
    return _value(datum)


def _value(d):
    if isinstance(d, Atom):
        if d.is_nat:
            return int(d.text)
        raise ParseError(f"not a value: {d.text}", d.line, d.column)
    if len(d) == 0:
        return ()
    if len(d) == 3 and isinstance(d[1], Atom) and d[1].text == ".":
        return (_value(d[0]), _value(d[2]))
    raise ParseError("value must be (), a natural or (x . y)", d.line, d.column)
