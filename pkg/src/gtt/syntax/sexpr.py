"""S-expression reader and width-aware pretty printer.

Atoms are any run of characters other than whitespace, parentheses and
``;`` (which starts a line comment).  Every node records its 1-based
(line, col) so later passes can point at the offending source.
"""

from __future__ import annotations

from dataclasses import dataclass


class SyntaxErr(Exception):
    def __init__(self, message: str, pos=None, code: str = "E-PARSE"):
        super().__init__(message)
        self.message = message
        self.pos = pos
        self.code = code

    def format(self) -> str:
        line, col = self.pos or (0, 0)
        return f"ERR {line}:{col} {self.code} {self.message}"


@dataclass(frozen=True)
class Atom:
    text: str
    pos: tuple


@dataclass(frozen=True)
class SList:
    items: tuple
    pos: tuple


def read_all(text: str) -> list:
    forms = []
    reader = _Reader(text)
    while True:
        reader.skip()
        if reader.i >= len(text):
            return forms
        forms.append(reader.read())


def read_one(text: str):
    forms = read_all(text)
    if len(forms) != 1:
        pos = forms[1].pos if len(forms) > 1 else (1, 1)
        raise SyntaxErr(f"expected exactly one top-level form, found {len(forms)}", pos)
    return forms[0]


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def _advance(self):
        if self.text[self.i] == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        self.i += 1

    def skip(self):
        text = self.text
        while self.i < len(text):
            ch = text[self.i]
            if ch == ";":
                while self.i < len(text) and text[self.i] != "\n":
                    self._advance()
            elif ch.isspace():
                self._advance()
            else:
                return

    def read(self):
        self.skip()
        if self.i >= len(self.text):
            raise SyntaxErr("unexpected end of input", (self.line, self.col))
        pos = (self.line, self.col)
        ch = self.text[self.i]
        if ch == ")":
            raise SyntaxErr("unexpected ')'", pos)
        if ch == "(":
            self._advance()
            items = []
            while True:
                self.skip()
                if self.i >= len(self.text):
                    raise SyntaxErr("unclosed '('", pos)
                if self.text[self.i] == ")":
                    self._advance()
                    return SList(tuple(items), pos)
                items.append(self.read())
        start = self.i
        while self.i < len(self.text) and not self.text[self.i].isspace() and self.text[self.i] not in "();":
            self._advance()
        return Atom(self.text[start:self.i], pos)


def layout(tree, width: int = 100) -> str:
    """Render a nested list of strings, breaking lines only when needed."""
    lines: list = []
    _layout(tree, 0, width, lines, "")
    return "\n".join(lines)


def flat(tree) -> str:
    if isinstance(tree, str):
        return tree
    return "(" + " ".join(flat(t) for t in tree) + ")"


def _layout(tree, indent: int, width: int, lines: list, prefix: str):
    text = flat(tree)
    if isinstance(tree, str) or indent + len(prefix) + len(text) <= width or len(tree) <= 1:
        lines.append(" " * indent + prefix + text)
        return
    head, *rest = tree
    # Keep short leading atoms (binders, type annotations) on the head line.
    opener = "(" + flat(head)
    while rest and isinstance(rest[0], str) and len(opener) + len(rest[0]) < 24:
        opener += " " + rest[0]
        rest = rest[1:]
    if not rest:
        lines.append(" " * indent + prefix + opener + ")")
        return
    lines.append(" " * indent + prefix + opener)
    for k, item in enumerate(rest):
        _layout(item, indent + len(prefix) + 2, width, lines, "")
    lines[-1] += ")"
