"""Triangular substitutions, walking, unification, and reification.

Substitutions are persistent: extension returns a new value.  Every deep
operation (walk_star, unify, occurs, reify) uses explicit work stacks so
that structures hundreds of thousands of cells deep do not exhaust the
interpreter stack.
"""

from __future__ import annotations

import threading

from .terms import (
    ConsCell,
    LogicVar,
    car,
    cdr,
    fresh_var,
    is_application,
    nil,
    term_eq,
)
from . import terms

_FAIL = object()


class Substitution:
    """A persistent LogicVar -> Term mapping.

    Triangular: bound values may themselves contain bound variables; use
    :func:`walk` to resolve chains.  Acyclicity is maintained by the occurs
    check in :func:`unify`.
    """

    __slots__ = ("_m",)

    def __init__(self, mapping=None):
        self._m = {} if mapping is None else mapping

    @classmethod
    def empty(cls) -> "Substitution":
        return cls()

    def get(self, v: LogicVar):
        return self._m.get(v)

    def extend(self, delta: dict) -> "Substitution":
        m = dict(self._m)
        m.update(delta)
        return Substitution(m)

    def __contains__(self, v) -> bool:
        return v in self._m

    def __len__(self) -> int:
        return len(self._m)

    def items(self):
        return self._m.items()

    def __repr__(self):
        return f"Substitution({self._m!r})"


EMPTY_SUBST = Substitution.empty()


def walk(t, s: Substitution):
    """Resolve a variable through the substitution's binding chain.

    Shallow: never descends into cons or expression structure.
    """
    while isinstance(t, LogicVar):
        nxt = s.get(t)
        if nxt is None:
            return t
        t = nxt
    return t


def _walk2(t, s: Substitution, delta: dict):
    while isinstance(t, LogicVar):
        if t in delta:
            t = delta[t]
            continue
        nxt = s.get(t)
        if nxt is None:
            return t
        t = nxt
    return t


def occurs(v: LogicVar, t, s: Substitution) -> bool:
    """True iff v appears anywhere in walk_star(t, s)."""
    return _occurs(v, t, s, {})


def _occurs(v, t, s, delta) -> bool:
    stack = [t]
    while stack:
        x = _walk2(stack.pop(), s, delta)
        if isinstance(x, LogicVar):
            if x.id == v.id:
                return True
        elif isinstance(x, ConsCell):
            stack.append(x.car)
            stack.append(x.cdr)
        elif isinstance(x, terms._EXPR_TYPE):
            stack.extend(tuple.__iter__(x))
    return False


def unify_delta(pairs, s: Substitution, occurs_check: bool = True):
    """Unify a sequence of term pairs against s, returning only the new
    bindings as a dict, or None on failure."""
    delta: dict = {}
    stack = list(pairs)
    while stack:
        u, v = stack.pop()
        u = _walk2(u, s, delta)
        v = _walk2(v, s, delta)
        if u is v:
            continue
        u_var = isinstance(u, LogicVar)
        v_var = isinstance(v, LogicVar)
        if u_var and v_var:
            if u.id != v.id:
                delta[u] = v
            continue
        if u_var:
            if occurs_check and _occurs(u, v, s, delta):
                return None
            delta[u] = v
            continue
        if v_var:
            if occurs_check and _occurs(v, u, s, delta):
                return None
            delta[v] = u
            continue
        u_app = is_application(u)
        v_app = is_application(v)
        if u_app and v_app:
            if (
                isinstance(u, terms._EXPR_TYPE)
                and isinstance(v, terms._EXPR_TYPE)
                and tuple.__len__(u) == tuple.__len__(v)
            ):
                stack.extend(zip(tuple.__iter__(u), tuple.__iter__(v)))
                continue
            stack.append((cdr(u), cdr(v)))
            stack.append((car(u), car(v)))
            continue
        if u_app or v_app:
            return None
        if u is nil or v is nil:
            return None  # nil == nil handled by `u is v`
        if type(u) is not type(v) or u != v:
            return None
    return delta


def unify(u, v, s: Substitution, occurs_check: bool = True):
    """First-order unification.

    Returns the minimal extension of s making u and v structurally equal
    under walk_star, or None on clash or occurs violation.  Cons cells
    unify componentwise; expression terms unify as (operator . operands)
    spines; atoms unify by strict variant equality.
    """
    delta = unify_delta([(u, v)], s, occurs_check=occurs_check)
    if delta is None:
        return None
    if not delta:
        return s
    return s.extend(delta)


def walk_star(t, s: Substitution):
    """Deep walk: resolve variables recursively through cons cells and
    expression-term items, rebuilding structure as needed."""
    out = []
    work = [(t, 0)]
    while work:
        node, phase = work.pop()
        if phase == 0:
            node = walk(node, s)
            if isinstance(node, ConsCell):
                work.append((node, 1))
                work.append((node.cdr, 0))
                work.append((node.car, 0))
            elif isinstance(node, terms._EXPR_TYPE):
                work.append((node, 2))
                for item in reversed(tuple(tuple.__iter__(node))):
                    work.append((item, 0))
            else:
                out.append(node)
        elif phase == 1:
            new_cdr = out.pop()
            new_car = out.pop()
            if new_car is node.car and new_cdr is node.cdr:
                out.append(node)
            else:
                out.append(ConsCell(new_car, new_cdr))
        else:
            n = tuple.__len__(node)
            items = out[-n:]
            del out[-n:]
            if all(a is b for a, b in zip(items, tuple.__iter__(node))):
                out.append(node)  # identity-preserving: keeps the eval cache
            else:
                out.append(type(node)(items))
    return out[0]


# Canonical display variables, one per reify index.  Reusing the same
# variable objects makes reification idempotent and deterministic.
_display_vars: dict[int, LogicVar] = {}
_display_lock = threading.Lock()


def display_var(index: int) -> LogicVar:
    with _display_lock:
        v = _display_vars.get(index)
        if v is None:
            v = fresh_var(f"_{index}")
            _display_vars[index] = v
        return v


def reify_names(t, s: Substitution) -> dict:
    """Map each unbound variable in walk_star(t, s) to its display token
    ("_0", "_1", ...) in left-to-right depth-first encounter order."""
    names: dict[LogicVar, str] = {}
    stack = [walk_star(t, s)]
    # stack-based DFS; children pushed in reverse so the left side pops first
    while stack:
        x = stack.pop()
        if isinstance(x, LogicVar):
            if x not in names:
                names[x] = f"_{len(names)}"
        elif isinstance(x, ConsCell):
            stack.append(x.cdr)
            stack.append(x.car)
        elif isinstance(x, terms._EXPR_TYPE):
            for item in reversed(tuple(tuple.__iter__(x))):
                stack.append(item)
    return names


def reify(t, s: Substitution):
    """walk_star(t, s) with remaining unbound variables replaced by stable
    display variables; idempotent."""
    resolved = walk_star(t, s)
    mapping: dict[LogicVar, LogicVar] = {}
    out = []
    work = [(resolved, 0)]
    while work:
        node, phase = work.pop()
        if phase == 0:
            if isinstance(node, LogicVar):
                dv = mapping.get(node)
                if dv is None:
                    dv = display_var(len(mapping))
                    mapping[node] = dv
                out.append(dv)
            elif isinstance(node, ConsCell):
                work.append((node, 1))
                work.append((node.cdr, 0))
                work.append((node.car, 0))
            elif isinstance(node, terms._EXPR_TYPE):
                work.append((node, 2))
                for item in reversed(tuple(tuple.__iter__(node))):
                    work.append((item, 0))
            else:
                out.append(node)
        elif phase == 1:
            new_cdr = out.pop()
            new_car = out.pop()
            if new_car is node.car and new_cdr is node.cdr:
                out.append(node)
            else:
                out.append(ConsCell(new_car, new_cdr))
        else:
            n = tuple.__len__(node)
            items = out[-n:]
            del out[-n:]
            if all(a is b for a, b in zip(items, tuple.__iter__(node))):
                out.append(node)
            else:
                out.append(type(node)(items))
    return out[0]


def alpha_eq(a, b) -> bool:
    """Structural equality up to a consistent renaming of logic variables."""
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    stack = [(a, b)]
    while stack:
        a, b = stack.pop()
        a_var = isinstance(a, LogicVar)
        b_var = isinstance(b, LogicVar)
        if a_var or b_var:
            if not (a_var and b_var):
                return False
            if fwd.setdefault(a.id, b.id) != b.id:
                return False
            if bwd.setdefault(b.id, a.id) != a.id:
                return False
            continue
        a_app = is_application(a)
        b_app = is_application(b)
        if a_app and b_app:
            stack.append((cdr(a), cdr(b)))
            stack.append((car(a), car(b)))
            continue
        if a_app or b_app:
            return False
        if a is nil or b is nil:
            if a is not b:
                return False
            continue
        if type(a) is not type(b) or a != b:
            return False
    return True


__all__ = [
    "Substitution",
    "EMPTY_SUBST",
    "walk",
    "walk_star",
    "unify",
    "unify_delta",
    "occurs",
    "reify",
    "reify_names",
    "display_var",
    "alpha_eq",
    "term_eq",
]
