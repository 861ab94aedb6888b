import pytest
from hypothesis import given, strategies as st

from heatflow.term import (
    App,
    PositionError,
    Symbol,
    Var,
    apply,
    compose,
    const,
    fn,
    is_ground,
    rename_apart,
    replace_at,
    size,
    subterm_at,
    subterms,
    unify,
    variables,
)

a, b, c = const("a"), const("b"), const("c")
x, y, z = Var("x"), Var("y"), Var("z")
hole, end = const("hole"), const("end")


def l(h, t):
    return fn("l", h, t)


def n(k):
    return fn("n", k)


def test_symbols_are_interned_by_name_and_arity():
    assert Symbol("f", 2) is Symbol("f", 2)
    assert Symbol("f", 1) is not Symbol("f", 2)
    with pytest.raises(ValueError):
        Symbol("g", -1)


def test_unify_identity_is_empty():
    assert unify(x, x) == {}


def test_unify_binds_both_sides():
    alpha, gamma = const("alpha"), const("gamma")
    sigma = unify(fn("f", x, gamma), fn("f", alpha, y))
    assert sigma == {x: alpha, y: gamma}


def test_unify_constant_clash():
    assert unify(hole, end) is None


def test_occurs_check():
    assert unify(x, l(n(x), y)) is None
    assert unify(fn("f", x, y), fn("f", y, fn("g", x))) is None


def test_apply_examples():
    assert apply({}, l(hole, end)) == l(hole, end)
    assert apply({x: n(const("1"))}, l(hole, l(x, end))) == l(hole, l(n(const("1")), end))
    t = l(hole, end)
    assert apply({x: a}, t) is t  # ground terms are shared, not copied


def test_subterms_order():
    assert subterms(hole) == [((), hole)]
    t = l(hole, end)
    assert subterms(t) == [((), t), ((1,), hole), ((2,), end)]
    deep = fn("f", fn("g", a), b)
    assert [p for p, _ in subterms(deep)] == [(), (1,), (1, 1), (2,)]


def test_replace_at():
    t = l(hole, end)
    assert replace_at(t, (), n(a)) == n(a)
    assert replace_at(t, (1,), n(const("5"))) == l(n(const("5")), end)
    assert t == l(hole, end)
    with pytest.raises(PositionError):
        replace_at(t, (3,), a)
    with pytest.raises(PositionError):
        subterm_at(t, (1, 1))


def test_rename_apart():
    t = l(hole, l(n(x), y))
    r = rename_apart(t, 100)
    assert r == l(hole, l(n(Var("x", 100)), Var("y", 100)))
    assert not set(variables(r)) & set(variables(t))
    g = l(hole, end)
    assert rename_apart(g, 7) is g
    assert unify(r, t) is not None


def test_compose_matches_sequential_application():
    s1 = {x: fn("f", y)}
    s2 = {y: a, z: b}
    t = fn("h", x, y, z)
    assert apply(compose(s1, s2), t) == apply(s2, apply(s1, t))


def test_size_and_ground():
    assert size(l(hole, end)) == 3
    assert is_ground(l(hole, end))
    assert not is_ground(l(x, end))


# random terms over a small signature

_SIG = [("f", 2), ("g", 1), ("a", 0), ("b", 0)]


def terms(max_leaves=8):
    leaves = st.one_of(st.sampled_from([Var("x"), Var("y"), Var("z")]),
                       st.sampled_from([a, b]))

    def extend(children):
        return st.one_of(
            st.builds(lambda s, t: fn("f", s, t), children, children),
            st.builds(lambda s: fn("g", s), children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def _instance_of(general, specific):
    # is ``specific`` an instance of ``general``? one-way matching
    binding = {}

    def match(p, t):
        if type(p) is Var:
            if p in binding:
                return binding[p] == t
            binding[p] = t
            return True
        return type(t) is App and p.head is t.head and all(map(match, p.args, t.args))

    return match(general, specific)


@given(terms(), terms())
def test_unifier_equalizes(s, t):
    sigma = unify(s, t)
    if sigma is not None:
        assert apply(sigma, s) == apply(sigma, t)
        assert apply(sigma, apply(sigma, s)) == apply(sigma, s)
        for v, bound in sigma.items():
            assert v not in variables(bound)


@given(terms(), terms())
def test_unify_symmetric_in_success(s, t):
    assert (unify(s, t) is None) == (unify(t, s) is None)


@given(terms())
def test_replace_at_own_subterm_is_identity(t):
    for p, sub in subterms(t):
        assert subterm_at(t, p) == sub
        assert replace_at(t, p, sub) == t
    assert subterms(t) == subterms(t)


# hand-built cases where another unifier exists; mgu must be more general
MGU_CATALOG = [
    (fn("f", x, y), fn("f", y, a), {x: a, y: a}),
    (fn("f", x, fn("g", y)), fn("f", fn("g", z), x), {x: fn("g", a), y: a, z: a}),
    (fn("g", x), fn("g", y), {x: b, y: b}),
    (fn("f", x, x), fn("f", y, z), {x: fn("g", a), y: fn("g", a), z: fn("g", a)}),
]


@pytest.mark.parametrize("s,t,other", MGU_CATALOG)
def test_mgu_is_most_general(s, t, other):
    sigma = unify(s, t)
    assert sigma is not None
    assert apply(other, s) == apply(other, t)
    assert _instance_of(apply(sigma, s), apply(other, s))
