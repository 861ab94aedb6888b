import pytest
from hypothesis import given, strategies as st

from heatflow.clause import Clause, InputOrigin, Literal, is_variant
from heatflow.parser import ParseError, ProblemSpec, format, parse, parse_clause, parse_term
from heatflow.puzzle import decode, vertical_move_eq
from heatflow.term import Var, fn

from conftest import HORIZONTAL_BLOCK, SOS_BLOCK, SOS_BOARD, VERTICAL_BLOCK


def test_horizontal_block():
    spec = parse(HORIZONTAL_BLOCK)
    (c,) = spec.usable
    lit = c.literals[0]
    assert lit.positive and lit.predicate.name == "EQUAL"
    assert {v.name for a in lit.args for v in _vars(a)} == {"x", "y"}
    assert not (spec.sos or spec.hot or spec.passive)


def _vars(t):
    if isinstance(t, Var):
        return [t]
    return [v for a in t.args for v in _vars(a)]


def test_sos_block_decodes():
    spec = parse(SOS_BLOCK)
    (c,) = spec.sos
    assert c.ground and c.is_unit
    assert decode(c.literals[0]) == SOS_BOARD


def test_vertical_block_is_the_width_four_clause():
    (c,) = parse(VERTICAL_BLOCK).usable
    assert is_variant(c, vertical_move_eq(4))


def test_empty_sos_list():
    spec = parse("list(sos). end_of_list.")
    assert spec == ProblemSpec()


def test_hot_demodulators_and_comments():
    text = """% a comment
    list(hot). EQUAL(a,b). end_of_list.
    list(demodulators). end_of_list.   % must be empty
    list(passive). -P(a). end_of_list.
    """
    spec = parse(text)
    assert len(spec.hot) == 1 and len(spec.passive) == 1
    assert not spec.passive[0].literals[0].positive


def test_clause_ids_follow_file_order():
    spec = parse("list(sos). P(a). end_of_list. list(usable). Q(b). P(c). end_of_list.")
    assert [c.id for c in spec.sos] == [1]
    assert [c.id for c in spec.usable] == [2, 3]


def test_multi_literal_clause():
    c = parse_clause("P(x) | -Q(x,a)")
    assert len(c.literals) == 2
    assert format(c) == "P(x) | -Q(x,a)."


@pytest.mark.parametrize("text,line,column,needle", [
    ("list(sos). EQUAL(a). end_of_list. list(usable). EQUAL(a,b). end_of_list.",
     1, 49, "EQUAL"),
    ("list(sos).\n  P(f(a). end_of_list.", 2, 9, "expected ')'"),
    ("list(foo). end_of_list.", 1, 6, "unknown list"),
    ("list(demodulators). EQUAL(a,b). end_of_list.", 1, 21, "demodulators"),
    ("list(sos). P(a). end_of_list. junk", 1, 31, "list"),
    ("list(sos). P(a).", 1, 17, "end_of_list"),
    ("list(sos). P(a) Q. end_of_list.", 1, 17, "expected '.'"),
    ("list(sos). x(a). end_of_list.", 1, 12, "variable"),
    ("list(sos). P(x(a)). end_of_list.", 1, 14, "variable"),
    ("list(sos). P(a)) . end_of_list.", 1, 16, "expected '.'"),
    ("list(sos). P(#). end_of_list.", 1, 14, "unexpected character"),
])
def test_errors_carry_positions(text, line, column, needle):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert needle in str(err)


def test_arity_error_inside_one_file():
    with pytest.raises(ParseError, match="EQUAL"):
        parse("list(sos). EQUAL(a). end_of_list. list(usable). EQUAL(a,b). end_of_list.")


def test_from_literals_checks_arity():
    with pytest.raises(ValueError):
        ProblemSpec.from_literals(sos=[Literal.of("P", fn("a"))], usable=[Literal.of("P")])


def test_round_trip_verbatim_blocks():
    for block in (HORIZONTAL_BLOCK, VERTICAL_BLOCK, SOS_BLOCK):
        spec = parse(block)
        again = parse(format(spec))
        for name in ("usable", "sos", "hot", "passive"):
            a, b = getattr(spec, name), getattr(again, name)
            assert len(a) == len(b)
            assert all(is_variant(x, y) for x, y in zip(a, b))
    # ground clause text is reproduced exactly
    ground = format(parse(SOS_BLOCK).sos[0])
    assert format(parse_clause(ground)) == ground
    assert "".join(SOS_BLOCK.split()) == "".join(format(parse(SOS_BLOCK)).split())


def test_variable_name_fallback():
    t = fn("f", Var("x", 0), Var("x", 3), Var("y", 0), Var("x3", 0))
    assert format(t) == "f(x,x3,y,x1)"
    assert format(fn("f", Var("", 0), Var("", 1))) == "f(x1,x2)"


def test_parse_term_trailing_input():
    with pytest.raises(ParseError, match="trailing"):
        parse_term("f(a) b")


# random well-formed specs

_names = st.sampled_from(["a", "b", "end", "hole", "c1"])
_vars_st = st.sampled_from(["x", "y", "z", "u", "v", "w", "x2"])


def _term_text():
    leaf = st.one_of(_names, _vars_st)
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            st.builds(lambda s, t: f"l({s},{t})", kids, kids),
            st.builds(lambda s: f"n({s})", kids),
        ),
        max_leaves=10,
    )


_literal_text = st.one_of(
    st.builds(lambda s, t: f"EQUAL({s},{t})", _term_text(), _term_text()),
    st.builds(lambda s: f"STATE({s})", _term_text()),
    st.builds(lambda s: f"-STATE({s})", _term_text()),
)
_clause_text = st.lists(_literal_text, min_size=1, max_size=3).map(" | ".join)


@given(st.dictionaries(st.sampled_from(["usable", "sos", "hot", "passive"]),
                       st.lists(_clause_text, max_size=4)))
def test_random_specs_round_trip(lists):
    text = "".join(f"list({k}).\n" + "".join(c + ".\n" for c in v) + "end_of_list.\n"
                   for k, v in lists.items())
    spec = parse(text)
    again = parse(format(spec))
    for name in ("usable", "sos", "hot", "passive"):
        a, b = getattr(spec, name), getattr(again, name)
        assert len(a) == len(b) == len(lists.get(name, []))
        for x, y in zip(a, b):
            assert is_variant(x, y)
            if x.ground:
                assert x.literals == y.literals


def test_clause_objects_from_parse():
    c = parse_clause("STATE(hole)", id=7, list_name="sos")
    assert isinstance(c, Clause) and c.id == 7 and c.origin == InputOrigin("sos")
