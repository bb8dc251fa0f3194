"""S-expression reader and printer for the term algebra.

Concrete syntax: symbols, integers, decimals, double-quoted strings,
booleans ``#t``/``#f``, proper lists ``( ... )``, dotted pairs
``(a . b)``, logic variables ``?name``, and anonymous variables ``?_``
(fresh on every occurrence).  A proper list whose head is a registered
operator symbol reads as an expression term; everything else stays a cons
list.  ``;`` starts a comment to end of line.
"""

from __future__ import annotations

import re

from .exprs import ExprTerm, OperatorRegistry
from .terms import ConsCell, LogicVar, Symbol, fresh_var, nil
from . import terms

_INT_RE = re.compile(r"[+-]?[0-9]+\Z")
_FLOAT_RE = re.compile(r"[+-]?([0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)([eE][+-]?[0-9]+)?\Z")
_DELIMS = set(' \t\r\n()";')


class ParseError(Exception):
    """Malformed input; carries 1-based line and column numbers."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class _Reader:
    def __init__(self, text, registry, var_table):
        self.text = text
        self.i = 0
        self.registry = registry
        self.vars = var_table

    def _pos(self, i=None):
        i = self.i if i is None else i
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def error(self, message, at=None):
        line, col = self._pos(at)
        return ParseError(message, line, col)

    def skip_ws(self):
        text, n = self.text, len(self.text)
        while self.i < n:
            c = text[self.i]
            if c == ";":
                nl = text.find("\n", self.i)
                self.i = n if nl < 0 else nl + 1
            elif c.isspace():
                self.i += 1
            else:
                return

    def at_end(self):
        self.skip_ws()
        return self.i >= len(self.text)

    def read(self):
        self.skip_ws()
        if self.i >= len(self.text):
            raise self.error("unexpected end of input")
        c = self.text[self.i]
        if c == "(":
            return self.read_list()
        if c == ")":
            raise self.error("unbalanced ')'")
        if c == '"':
            return self.read_string()
        return self.read_atom()

    def read_list(self):
        open_at = self.i
        self.i += 1
        items = []
        tail = nil
        saw_dot = False
        while True:
            self.skip_ws()
            if self.i >= len(self.text):
                raise self.error("unbalanced '('", open_at)
            c = self.text[self.i]
            if c == ")":
                self.i += 1
                break
            if c == "." and self._is_lone_dot():
                if not items or saw_dot:
                    raise self.error("misplaced '.' in list")
                self.i += 1
                saw_dot = True
                tail = self.read()
                self.skip_ws()
                if self.i >= len(self.text) or self.text[self.i] != ")":
                    raise self.error("expected ')' after dotted tail")
                self.i += 1
                break
            items.append(self.read())
        if saw_dot:
            out = tail
            for x in reversed(items):
                out = ConsCell(x, out)
            return out
        if (
            items
            and self.registry is not None
            and isinstance(items[0], Symbol)
            and items[0].name in self.registry
        ):
            return ExprTerm(items)
        out = nil
        for x in reversed(items):
            out = ConsCell(x, out)
        return out

    def _is_lone_dot(self):
        j = self.i + 1
        return j >= len(self.text) or self.text[j] in _DELIMS

    def read_string(self):
        start = self.i
        self.i += 1
        out = []
        text, n = self.text, len(self.text)
        while self.i < n:
            c = text[self.i]
            if c == '"':
                self.i += 1
                return "".join(out)
            if c == "\\":
                self.i += 1
                if self.i >= n:
                    break
                esc = text[self.i]
                mapped = {"n": "\n", "t": "\t", "\\": "\\", '"': '"', "r": "\r"}.get(esc)
                if mapped is None:
                    raise self.error(f"bad string escape: \\{esc}")
                out.append(mapped)
            else:
                out.append(c)
            self.i += 1
        raise self.error("unterminated string", start)

    def read_atom(self):
        start = self.i
        text, n = self.text, len(self.text)
        while self.i < n and text[self.i] not in _DELIMS:
            self.i += 1
        tok = text[start : self.i]
        if tok == "#t":
            return True
        if tok == "#f":
            return False
        if tok.startswith("?"):
            name = tok[1:]
            if not name:
                raise self.error("'?' needs a variable name (use ?_ for anonymous)", start)
            if name == "_":
                return fresh_var()
            v = self.vars.get(name)
            if v is None:
                v = fresh_var(name)
                self.vars[name] = v
            return v
        if _INT_RE.match(tok):
            return int(tok)
        if _FLOAT_RE.match(tok) and any(ch in tok for ch in ".eE"):
            return float(tok)
        return Symbol(tok)


def parse_sexpr(text: str, registry: OperatorRegistry | None = None, var_table=None):
    """Read exactly one term from text.

    ``?name`` tokens map to one logic variable per distinct name per
    document (pass a shared var_table to span documents).
    """
    reader = _Reader(text, registry, {} if var_table is None else var_table)
    t = reader.read()
    if not reader.at_end():
        raise reader.error("trailing content after term")
    return t


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")


def print_term(t) -> str:
    """Canonical text for a term.

    Unbound variables print as ``?_0``, ``?_1``, ... in left-to-right
    depth-first encounter order; expression terms print as plain lists.
    Deterministic, and the inverse of :func:`parse_sexpr` up to variable
    identity.
    """
    names: dict[LogicVar, str] = {}
    out: list[str] = []
    # work items: ('t', term) to render, or ('s', literal) to emit
    work = [("t", t)]
    while work:
        kind, x = work.pop()
        if kind == "s":
            out.append(x)
            continue
        if isinstance(x, LogicVar):
            name = names.get(x)
            if name is None:
                name = f"_{len(names)}"
                names[x] = name
            out.append(f"?{name}")
        elif x is nil:
            out.append("()")
        elif isinstance(x, bool):
            out.append("#t" if x else "#f")
        elif isinstance(x, (int, float)):
            out.append(repr(x))
        elif isinstance(x, str):
            out.append(f'"{_escape(x)}"')
        elif isinstance(x, Symbol):
            out.append(x.name)
        elif isinstance(x, (ConsCell,) + terms._EXPR_TYPE):
            if isinstance(x, ConsCell):
                elems = []
                cur = x
                while isinstance(cur, ConsCell):
                    elems.append(cur.car)
                    cur = cur.cdr
                tail = cur
            else:
                elems = list(tuple.__iter__(x))
                tail = nil
            work.append(("s", ")"))
            if tail is not nil:
                work.append(("t", tail))
                work.append(("s", " . "))
            for j, e in enumerate(reversed(elems)):
                work.append(("t", e))
                if j < len(elems) - 1:
                    work.append(("s", " "))
            work.append(("s", "("))
        else:
            raise TypeError(f"cannot print {x!r}")
    return "".join(out)
