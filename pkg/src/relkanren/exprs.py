"""Evaluable operator-application terms and the operator registry.

An :class:`ExprTerm` is an immutable nonempty sequence whose first item is
the operator position.  It unifies interchangeably with the equivalent cons
spine ``(op . operands)`` and can evaluate itself against an
:class:`OperatorRegistry`, caching the result.

Operators are named by :class:`~relkanren.terms.Symbol` and resolved through
the registry at evaluation time, which keeps terms serializable and keeps
unification purely syntactic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import terms
from .terms import (
    ConsCell,
    Symbol,
    is_ground,
    nil,
    term_eq,
    term_hash,
)


class EvalError(Exception):
    """Evaluation failed: domain error or a non-evaluable operator."""


class NonGroundError(EvalError):
    """Evaluation was attempted on a term containing logic variables."""


class UnknownOperatorError(EvalError):
    """The operator position does not resolve in the registry."""


class ArityError(EvalError):
    """The operand count does not match the operator's declared arity."""


class ExprTerm(tuple):
    """An operator-application term behaving as an immutable sequence.

    Indexing returns items; slicing returns a (nonempty) ExprTerm sharing
    no mutable state with the original.
    """

    def __new__(cls, items):
        items = tuple(items)
        if not items:
            raise ValueError("an expression term needs at least one item")
        return tuple.__new__(cls, items)

    def __getitem__(self, key):
        if isinstance(key, slice):
            part = tuple.__getitem__(self, key)
            if not part:
                raise ValueError("a slice of an expression term must be nonempty")
            return ExprTerm(part)
        return tuple.__getitem__(self, key)

    def __eq__(self, other):
        if not isinstance(other, (ExprTerm, ConsCell)):
            return NotImplemented
        return term_eq(self, other)

    def __ne__(self, other):
        res = self.__eq__(other)
        if res is NotImplemented:
            return res
        return not res

    def __hash__(self):
        return term_hash(self)

    def __repr__(self):
        from .sexpr import print_term

        return print_term(self)


# Late-bind the expression type into the term module so the structural
# helpers there can recognize it without a circular import.
terms._EXPR_TYPE = (ExprTerm,)


def make_expr(*items) -> ExprTerm:
    """Build an expression term; requires at least the operator item."""
    return ExprTerm(items)


def expr_of_application(rator, rands) -> ExprTerm:
    """Assemble an expression term from an operator and its operand sequence."""
    return ExprTerm((rator, *rands))


def application_of_expr(e: ExprTerm):
    """Split an expression term into (operator, operand tuple)."""
    items = tuple(tuple.__iter__(e))
    return items[0], items[1:]


@dataclass(frozen=True)
class OperatorDef:
    """A registered operator: name, arity contract, evaluator, attributes.

    ``arity`` of None means variadic.  ``eval_fn`` of None marks a purely
    symbolic operator (e.g. a distribution constructor) that cannot be
    evaluated; ``eval_fn`` receives the already-evaluated operand terms.
    """

    name: str
    arity: int | None
    eval_fn: Callable | None
    commutative: bool = False
    associative: bool = False


class OperatorRegistry:
    """Name -> OperatorDef mapping with a per-registry evaluation memo."""

    def __init__(self):
        self._defs: dict[str, OperatorDef] = {}
        self._memo: dict[ExprTerm, object] = {}

    def register(self, opdef: OperatorDef) -> None:
        if opdef.name in self._defs:
            raise ValueError(f"operator already registered: {opdef.name}")
        self._defs[opdef.name] = opdef

    def get(self, name: str) -> OperatorDef:
        try:
            return self._defs[name]
        except KeyError:
            raise UnknownOperatorError(f"unknown operator: {name}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._defs

    def names(self):
        return tuple(self._defs)


def _num(t):
    if isinstance(t, bool) or not isinstance(t, (int, float)):
        raise EvalError(f"expected a number, got {t!r}")
    return t


def _fold_sum(t):
    # scalar numbers pass through; proper lists reduce by addition
    if isinstance(t, (int, float)) and not isinstance(t, bool):
        return t
    elems = terms.spine_elements(t)
    if elems is None:
        raise EvalError(f"sum expects a number or a proper list, got {t!r}")
    total = 0
    for x in elems:
        total = total + _num(x)
    return total


def _div(a, b):
    a, b = _num(a), _num(b)
    if b == 0:
        raise EvalError("division by zero")
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return a / b


def _log(x):
    x = _num(x)
    if x <= 0:
        raise EvalError(f"log domain error: {x!r}")
    return math.log(x)


def builtin_registry() -> OperatorRegistry:
    """A fresh registry with the arithmetic vocabulary.

    Integer operations stay exact; any decimal operand promotes the result
    to decimal; log and exp always produce decimals.
    """
    reg = OperatorRegistry()
    reg.register(OperatorDef("add", 2, lambda a: _num(a[0]) + _num(a[1]), commutative=True, associative=True))
    reg.register(OperatorDef("sub", 2, lambda a: _num(a[0]) - _num(a[1])))
    reg.register(OperatorDef("mul", 2, lambda a: _num(a[0]) * _num(a[1]), commutative=True, associative=True))
    reg.register(OperatorDef("div", 2, lambda a: _div(a[0], a[1])))
    reg.register(OperatorDef("log", 1, lambda a: _log(a[0])))
    reg.register(OperatorDef("exp", 1, lambda a: math.exp(_num(a[0]))))
    reg.register(OperatorDef("sum", 1, lambda a: _fold_sum(a[0])))
    return reg


def eval_expr(e: ExprTerm, reg: OperatorRegistry):
    """Evaluate a ground expression term bottom-up, memoizing results.

    Repeated evaluation and evaluation of a reconstruction from identical
    items both hit the cache without re-invoking the operator functions.
    """
    if not isinstance(e, ExprTerm):
        raise TypeError(f"not an expression term: {e!r}")
    if not is_ground(e):
        raise NonGroundError(f"cannot evaluate non-ground term: {e!r}")
    return _eval(e, reg)


def _eval(t, reg):
    if isinstance(t, ExprTerm):
        cached = getattr(t, "_cache", None)
        if cached is not None and cached[0] is reg:
            return cached[1]
        if t in reg._memo:
            val = reg._memo[t]
            t._cache = (reg, val)
            return val
        items = tuple(tuple.__iter__(t))
        op = items[0]
        if not isinstance(op, Symbol):
            raise UnknownOperatorError(f"operator position is not a symbol: {op!r}")
        opdef = reg.get(op.name)
        args = [_eval(x, reg) for x in items[1:]]
        if opdef.arity is not None and len(args) != opdef.arity:
            raise ArityError(
                f"{op.name} expects {opdef.arity} operand(s), got {len(args)}"
            )
        if opdef.eval_fn is None:
            raise EvalError(f"operator {op.name} is not evaluable")
        val = opdef.eval_fn(args)
        reg._memo[t] = val
        t._cache = (reg, val)
        return val
    if isinstance(t, ConsCell):
        return ConsCell(_eval(t.car, reg), _eval(t.cdr, reg))
    return t
