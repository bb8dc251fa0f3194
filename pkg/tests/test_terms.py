import pytest

from relkanren import (
    DecompositionError,
    ImproperListError,
    LogicVar,
    Symbol,
    car,
    cdr,
    cons,
    fresh_var,
    is_ground,
    list_from_term,
    nil,
    term_eq,
    term_from_list,
    term_hash,
    to_term,
)


def test_cons_car_cdr():
    pair = cons(1, 2)
    assert car(pair) == 1
    assert cdr(pair) == 2


def test_car_of_atom_raises():
    with pytest.raises(DecompositionError):
        car(5)
    with pytest.raises(DecompositionError):
        cdr(nil)


def test_list_round_trip():
    items = [1, "two", Symbol("three"), nil]
    assert list_from_term(term_from_list(items)) == items


def test_empty_list_is_nil():
    assert term_from_list([]) is nil
    assert list_from_term(nil) == []


def test_improper_list_rejected():
    with pytest.raises(ImproperListError):
        list_from_term(cons(1, 2))


def test_to_term_coerces_sequences():
    t = to_term([1, (2, 3), []])
    assert term_eq(t, term_from_list([1, term_from_list([2, 3]), nil]))


def test_strict_atom_equality():
    assert not term_eq(2, 2.0)
    assert not term_eq(True, 1)
    assert not term_eq(False, 0)
    assert term_eq(2.0, 2.0)
    assert term_eq(True, True)


def test_strict_hash_distinguishes_types():
    assert term_hash(2) != term_hash(2.0)
    assert term_hash(True) != term_hash(1)


def test_symbols_compare_by_name():
    assert Symbol("add") == Symbol("add")
    assert Symbol("add") != Symbol("mul")
    assert Symbol("add") != "add"


def test_logic_vars_are_distinct():
    a, b = fresh_var(), fresh_var()
    assert a != b
    assert a == a
    assert len({a, b}) == 2


def test_term_eq_deep_structure():
    u = term_from_list([1, term_from_list([2, 3]), cons(4, 5)])
    v = term_from_list([1, term_from_list([2, 3]), cons(4, 5)])
    assert term_eq(u, v)
    assert term_hash(u) == term_hash(v)


def test_term_eq_detects_difference():
    u = term_from_list([1, 2, 3])
    v = term_from_list([1, 2, 4])
    assert not term_eq(u, v)


def test_cons_cell_equality_protocol():
    assert cons(1, 2) == cons(1, 2)
    assert cons(1, 2) != cons(1, 3)
    assert hash(cons(1, 2)) == hash(cons(1, 2))


def test_is_ground():
    assert is_ground(term_from_list([1, 2, 3]))
    assert not is_ground(cons(1, fresh_var()))
    assert is_ground(nil)
    assert not is_ground(fresh_var())


def test_deep_term_eq_is_stack_safe():
    def build():
        t = 0
        for i in range(50_000):
            t = cons(i, t)
        return t

    assert term_eq(build(), build())


def test_var_hint_in_repr():
    v = fresh_var("x")
    assert "x" in repr(v)
    assert isinstance(v, LogicVar)
