"""Shared helpers for the test suite: random term generators and a few
structural convenience functions."""

import random

from relkanren import (
    ExprTerm,
    Symbol,
    cons,
    fresh_var,
    make_expr,
    nil,
    term_from_list,
)

ATOMS = [0, 1, 2, -3, 42, 2.5, -0.125, "hello", "", True, False, Symbol("foo"), nil]

OPERATORS = {
    Symbol("add"): 2,
    Symbol("mul"): 2,
    Symbol("sub"): 2,
    Symbol("log"): 1,
    Symbol("exp"): 1,
}


def random_atom(rng):
    return rng.choice(ATOMS)


def random_ground_term(rng, depth=3):
    """A random variable-free term mixing atoms, lists, pairs and applications."""
    if depth <= 0 or rng.random() < 0.35:
        return random_atom(rng)
    shape = rng.randrange(3)
    if shape == 0:
        width = rng.randrange(0, 4)
        return term_from_list(
            [random_ground_term(rng, depth - 1) for _ in range(width)]
        )
    if shape == 1:
        return cons(
            random_ground_term(rng, depth - 1), random_ground_term(rng, depth - 1)
        )
    op = rng.choice(list(OPERATORS))
    args = [random_ground_term(rng, depth - 1) for _ in range(OPERATORS[op])]
    return make_expr(op, *args)


def random_term(rng, variables, depth=3):
    """Like random_ground_term but sprinkles logic variables from a pool."""
    if variables and rng.random() < 0.2:
        return rng.choice(variables)
    if depth <= 0 or rng.random() < 0.3:
        return random_atom(rng)
    shape = rng.randrange(3)
    if shape == 0:
        width = rng.randrange(0, 4)
        return term_from_list([random_term(rng, variables, depth - 1) for _ in range(width)])
    if shape == 1:
        return cons(random_term(rng, variables, depth - 1), random_term(rng, variables, depth - 1))
    op = rng.choice(list(OPERATORS))
    args = [random_term(rng, variables, depth - 1) for _ in range(OPERATORS[op])]
    return make_expr(op, *args)


def variable_pool(n):
    return [fresh_var() for _ in range(n)]


def seeded(seed):
    return random.Random(seed)
