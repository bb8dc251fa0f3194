"""Relational building blocks for term rewriting.

List relations (conso, membero), permutation matching, fixed-point
reduction, whole-graph walking, groundedness ordering, and commutative
argument matching.
"""

from __future__ import annotations

import itertools

from . import terms
from .exprs import OperatorRegistry
from .terms import (
    ConsCell,
    LogicVar,
    Symbol,
    cons,
    fresh_var,
    is_ground,
    nil,
    spine_elements,
    term_from_list,
    term_hash,
    to_term,
)
from .goals import conde, delay, eq, lall
from .unify import Substitution, walk, walk_star


class GroundednessError(Exception):
    """A relation was applied in a mode that would diverge (e.g. permuteo
    with both arguments fresh)."""


def conso(a, d, pair):
    """Holds iff pair == cons(a, d)."""
    return eq(cons(to_term(a), to_term(d)), pair)


def membero(x, coll):
    """Holds iff x unifies with some element of the proper list coll."""
    x = to_term(x)
    coll = to_term(coll)
    head, tail = fresh_var(), fresh_var()
    return conde(
        [conso(x, fresh_var(), coll)],
        [conso(head, tail, coll), delay(lambda: membero(x, tail))],
    )


class _Key:
    """Strict structural wrapper so multisets distinguish 2 from 2.0."""

    __slots__ = ("t",)

    def __init__(self, t):
        self.t = t

    def __eq__(self, other):
        a, b = self.t, other.t
        if terms.is_application(a) or terms.is_application(b):
            return terms.term_eq(a, b)
        if isinstance(a, LogicVar) or isinstance(b, LogicVar):
            return isinstance(a, LogicVar) and isinstance(b, LogicVar) and a.id == b.id
        if a is nil or b is nil:
            return a is b
        return type(a) is type(b) and a == b

    def __hash__(self):
        return term_hash(self.t)


def _multiset(elems):
    counts: dict = {}
    for e in elems:
        k = _Key(e)
        counts[k] = counts.get(k, 0) + 1
    return counts


def permuteo(a, b):
    """Holds iff a and b are proper lists that are multiset-equal.

    Ground/ground uses a direct multiset comparison; ground/fresh
    enumerates permutations of the ground side.  Both-fresh arguments
    raise GroundednessError instead of diverging.
    """
    a = to_term(a)
    b = to_term(b)

    def permuteo_goal(state):
        aw = walk_star(a, state.subst)
        bw = walk_star(b, state.subst)
        a_elems = spine_elements(aw)
        b_elems = spine_elements(bw)
        if a_elems is not None and b_elems is not None:
            if len(a_elems) != len(b_elems):
                return
            if is_ground(aw) and is_ground(bw):
                if _multiset(a_elems) == _multiset(b_elems):
                    yield state
                return
        if a_elems is None and b_elems is None:
            raise GroundednessError(
                "permuteo needs at least one argument with a known list spine"
            )
        if a_elems is not None:
            src, dst = a_elems, bw
        else:
            src, dst = b_elems, aw
        seen = set()
        for perm in itertools.permutations(src):
            key = tuple(_Key(x) for x in perm)
            if key in seen:
                continue
            seen.add(key)
            yield from eq(term_from_list(perm), dst)(state)

    return permuteo_goal


def reduceo(rel, u, v):
    """Holds iff v is reachable from u by one or more applications of rel.

    The deeper-reduction branch is tried first, so the first answer for a
    ground u is its most-reduced reachable form.
    """
    u = to_term(u)
    v = to_term(v)

    def reduceo_goal(state):
        step = fresh_var()
        g = lall(
            rel(u, step),
            conde(
                [delay(lambda: reduceo(rel, step, v))],
                [eq(step, v)],
            ),
        )
        yield from g(state)

    return reduceo_goal


def walko(rel, u, v, rator_rel=None):
    """Relate whole term graphs by applying rel at any position.

    Disjuncts in order: the relation at the root; descent into
    application-shaped terms (the operator positions relate via rator_rel,
    operand lists elementwise with fresh tails permitted); plain equality.
    """
    rr = rator_rel if rator_rel is not None else eq

    def step(x, y):
        return conde(
            [delay(lambda: rel(x, y))],
            [_descend(x, y)],
            [eq(x, y)],
        )

    def _descend(x, y):
        cx, dx = fresh_var(), fresh_var()
        cy, dy = fresh_var(), fresh_var()
        return lall(
            conso(cx, dx, x),
            conso(cy, dy, y),
            rr(cx, cy),
            _rands(dx, dy),
        )

    def _rands(dx, dy):
        hx, tx = fresh_var(), fresh_var()
        hy, ty = fresh_var(), fresh_var()
        return conde(
            [eq(dx, nil), eq(dy, nil)],
            [
                conso(hx, tx, dx),
                conso(hy, ty, dy),
                delay(lambda: step(hx, hy)),
                delay(lambda: _rands(tx, ty)),
            ],
        )

    return step(to_term(u), to_term(v))


def _fresh_vars_of(t, s: Substitution) -> set:
    out = set()
    stack = [t]
    while stack:
        x = walk(stack.pop(), s)
        if isinstance(x, LogicVar):
            out.add(x)
        elif isinstance(x, ConsCell):
            stack.append(x.car)
            stack.append(x.cdr)
        elif isinstance(x, terms._EXPR_TYPE):
            stack.extend(tuple.__iter__(x))
    return out


def groundedness_score(t, s: Substitution) -> int:
    """Number of distinct fresh variables in walk_star(t, s)."""
    return len(_fresh_vars_of(t, s))


def ground_order(pairs, s: Substitution):
    """Stable sort of term pairs, most-ground first.

    The score of a pair is the count of distinct fresh variables across
    both components, so failing or finite applications run before
    potentially divergent fresh-fresh ones.
    """
    return sorted(
        pairs, key=lambda uv: len(_fresh_vars_of(uv[0], s) | _fresh_vars_of(uv[1], s))
    )


def eq_comm(u, v, reg: OperatorRegistry):
    """Like eq, but when both sides apply the same commutative registry
    operator the operand lists match up to permutation.

    Associativity is not handled.
    """
    u = to_term(u)
    v = to_term(v)

    def eq_comm_goal(state):
        s = state.subst
        uw = walk(u, s)
        vw = walk(v, s)
        if terms.is_application(uw) and terms.is_application(vw):
            op_u = walk(terms.car(uw), s)
            op_v = walk(terms.car(vw), s)
            if (
                isinstance(op_u, Symbol)
                and isinstance(op_v, Symbol)
                and op_u.name == op_v.name
                and op_u.name in reg
                and reg.get(op_u.name).commutative
            ):
                ru = spine_elements(walk_star(terms.cdr(uw), s))
                rv = spine_elements(walk_star(terms.cdr(vw), s))
                if ru is not None and rv is not None:
                    if len(ru) != len(rv):
                        return
                    seen = set()
                    for perm in itertools.permutations(ru):
                        key = tuple(_Key(x) for x in perm)
                        if key in seen:
                            continue
                        seen.add(key)
                        pairs = ground_order(list(zip(perm, rv)), s)
                        g = lall(*(eq(x, y) for x, y in pairs))
                        yield from g(state)
                    return
        yield from eq(u, v)(state)

    return eq_comm_goal
