"""Core term algebra: atoms, logic variables, cons pairs, and structural helpers.

Atoms are plain Python values (``int``, ``float``, ``str``, ``bool``) plus
:class:`Symbol` for operator and identifier names.  Equality between atoms is
strict on the variant: the integer ``2`` and the decimal ``2.0`` are distinct
terms, as are ``True`` and ``1``.

All deep operations here (equality, hashing, list conversion) use explicit
work stacks instead of host recursion so that very deep structures do not
exhaust the interpreter stack.
"""

from __future__ import annotations

import itertools
import threading

# Updated by relkanren.exprs at import time; isinstance(x, ()) is always False.
_EXPR_TYPE: tuple = ()


class DecompositionError(Exception):
    """A car/cdr projection was taken of a term with no head or tail."""


class ImproperListError(ValueError):
    """A proper Nil-terminated list was required but the spine is improper."""


class Symbol:
    """An interned-by-value symbol atom (operator names, identifiers)."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Symbol) and self.name == other.name

    def __hash__(self):
        return hash(("sym", self.name))

    def __repr__(self):
        return self.name


class LogicVar:
    """A logic variable, identified solely by its id.

    The optional hint is for display only and never participates in
    equality or hashing.
    """

    __slots__ = ("id", "hint")

    def __init__(self, id: int, hint: str | None = None):
        self.id = id
        self.hint = hint

    def __eq__(self, other):
        return isinstance(other, LogicVar) and self.id == other.id

    def __hash__(self):
        return hash(("var", self.id))

    def __repr__(self):
        if self.hint:
            return f"?{self.hint}#{self.id}"
        return f"?#{self.id}"


_var_counter = itertools.count()
_var_lock = threading.Lock()


def fresh_var(hint: str | None = None) -> LogicVar:
    """Return a logic variable with an id never issued before."""
    with _var_lock:
        vid = next(_var_counter)
    return LogicVar(vid, hint)


class _Nil:
    """The empty list; a singleton terminating proper list spines."""

    __slots__ = ()

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "()"


nil = _Nil()


class ConsCell:
    """A pair of terms.  The cdr may be any term (improper lists allowed)."""

    __slots__ = ("car", "cdr", "_hash")

    def __init__(self, car, cdr):
        self.car = car
        self.cdr = cdr
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, (ConsCell,) + _EXPR_TYPE):
            return NotImplemented
        return term_eq(self, other)

    def __hash__(self):
        return term_hash(self)

    def __repr__(self):
        from .sexpr import print_term

        return print_term(self)


def cons(car, cdr) -> ConsCell:
    """Construct a cons pair; cons(x, nil) is the one-element list (x)."""
    return ConsCell(car, cdr)


def is_application(t) -> bool:
    """True for terms with a head/tail decomposition: cons cells and
    nonempty expression terms."""
    return isinstance(t, ConsCell) or isinstance(t, _EXPR_TYPE)


def car(t):
    """Head of a cons cell, or the operator position of an expression term."""
    if isinstance(t, ConsCell):
        return t.car
    if isinstance(t, _EXPR_TYPE):
        return tuple.__getitem__(t, 0)
    raise DecompositionError(f"cannot take car of {t!r}")


def cdr(t):
    """Tail of a cons cell, or the operand list of an expression term."""
    if isinstance(t, ConsCell):
        return t.cdr
    if isinstance(t, _EXPR_TYPE):
        return term_from_list(list(tuple.__iter__(t))[1:])
    raise DecompositionError(f"cannot take cdr of {t!r}")


def head_tail(t):
    """(car, cdr) as one call; raises DecompositionError if undefined."""
    return car(t), cdr(t)


def term_from_list(items) -> object:
    """Build a proper list term from a sequence of terms."""
    out = nil
    for x in reversed(list(items)):
        out = ConsCell(x, out)
    return out


def list_from_term(t) -> list:
    """Elements of a proper list term.

    Raises ImproperListError when the spine is not Nil-terminated (a
    dotted pair or a variable tail).
    """
    out = []
    while isinstance(t, ConsCell):
        out.append(t.car)
        t = t.cdr
    if isinstance(t, _EXPR_TYPE):
        # an expression term in tail position contributes its own spine
        items = list(tuple.__iter__(t))
        out.extend(items)
        return out
    if t is not nil:
        raise ImproperListError(f"improper list tail: {t!r}")
    return out


def spine_elements(t):
    """Like list_from_term but returns None instead of raising."""
    if isinstance(t, _EXPR_TYPE):
        return list(tuple.__iter__(t))
    out = []
    while isinstance(t, ConsCell):
        out.append(t.car)
        t = t.cdr
    if t is nil:
        return out
    return None


def to_term(obj):
    """Coerce Python natives to terms: lists/tuples become proper lists.

    Terms pass through unchanged; this is a convenience for goal
    constructors so callers can write ``membero(x, (1, 2, 3))``.
    """
    if isinstance(obj, _EXPR_TYPE):
        return obj
    if obj is nil or isinstance(obj, (LogicVar, ConsCell, Symbol)):
        return obj
    if isinstance(obj, (list, tuple)):
        return term_from_list([to_term(x) for x in obj])
    if isinstance(obj, (bool, int, float, str)):
        return obj
    raise TypeError(f"cannot convert {obj!r} to a term")


_H_NIL = hash(("nil",))


def _atom_hash(t):
    if isinstance(t, LogicVar):
        return hash(("var", t.id))
    if t is nil:
        return _H_NIL
    if isinstance(t, Symbol):
        return hash(("sym", t.name))
    if isinstance(t, bool):
        return hash(("bool", t))
    if isinstance(t, int):
        return hash(("int", t))
    if isinstance(t, float):
        return hash(("float", t))
    if isinstance(t, str):
        return hash(("str", t))
    raise TypeError(f"not a term: {t!r}")


def term_hash(t) -> int:
    """Structural hash.  An expression term hashes like its cons spine, so
    terms that unify as equal hash equal.  Iterative; memoized on cells."""
    out = []
    work = [(t, 0)]
    while work:
        node, phase = work.pop()
        if phase == 0:
            if isinstance(node, ConsCell):
                if node._hash is not None:
                    out.append(node._hash)
                    continue
                work.append((node, 1))
                work.append((node.cdr, 0))
                work.append((node.car, 0))
            elif isinstance(node, _EXPR_TYPE):
                cached = getattr(node, "_thash", None)
                if cached is not None:
                    out.append(cached)
                    continue
                work.append((node, 2))
                for item in reversed(tuple(tuple.__iter__(node))):
                    work.append((item, 0))
            else:
                out.append(_atom_hash(node))
        elif phase == 1:
            h_cdr = out.pop()
            h_car = out.pop()
            h = hash(("cons", h_car, h_cdr))
            node._hash = h
            out.append(h)
        else:  # expression term: fold its items like a proper spine
            n = tuple.__len__(node)
            hs = out[-n:]
            del out[-n:]
            h = _H_NIL
            for ih in reversed(hs):
                h = hash(("cons", ih, h))
            node._thash = h
            out.append(h)
    return out[0]


def _atoms_equal(a, b) -> bool:
    return type(a) is type(b) and a == b


def term_eq(a, b) -> bool:
    """Structural equality, strict on atom variants.

    Expression terms compare equal to their cons-spine equivalents since
    unification treats those forms as interchangeable.
    """
    stack = [(a, b)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        a_app = is_application(a)
        b_app = is_application(b)
        if a_app and b_app:
            if (
                isinstance(a, _EXPR_TYPE)
                and isinstance(b, _EXPR_TYPE)
                and tuple.__len__(a) == tuple.__len__(b)
            ):
                stack.extend(zip(tuple.__iter__(a), tuple.__iter__(b)))
                continue
            stack.append((cdr(a), cdr(b)))
            stack.append((car(a), car(b)))
            continue
        if a_app or b_app:
            return False
        if isinstance(a, LogicVar) or isinstance(b, LogicVar):
            if not (isinstance(a, LogicVar) and isinstance(b, LogicVar)):
                return False
            if a.id != b.id:
                return False
            continue
        if a is nil or b is nil:
            return False  # `a is b` above covers nil == nil
        if not _atoms_equal(a, b):
            return False
    return True


def is_ground(t) -> bool:
    """True when no logic variable occurs anywhere in the term."""
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, LogicVar):
            return False
        if isinstance(x, ConsCell):
            stack.append(x.car)
            stack.append(x.cdr)
        elif isinstance(x, _EXPR_TYPE):
            stack.extend(tuple.__iter__(x))
    return True
