import pytest
from hypothesis import given, settings, strategies as st

from orlidom import specparse as P
from orlidom.young import SpecError


class TestParse:
    def test_zygmund(self):
        tree = P.parse_spec("zygmund(q=2, a=1.5)")
        assert tree.ident == "zygmund"
        assert tree.arg_dict() == {"q": 2.0, "a": 1.5}

    def test_nested_glue(self):
        tree = P.parse_spec("glue(zero=power(p=2), inf=zygmund(q=3, a=0))")
        d = tree.arg_dict()
        assert d["zero"].ident == "power" and d["inf"].ident == "zygmund"

    def test_missing_number(self):
        with pytest.raises(P.ParseError) as err:
            P.parse_spec("power(p=)")
        assert err.value.offset == 8

    def test_unknown_identifier_position(self):
        with pytest.raises(P.ParseError) as err:
            P.parse_spec("glue(zero=wat(p=2), inf=power(p=1))")
        assert "wat" in str(err.value) and err.value.offset == 10

    def test_trailing_garbage(self):
        with pytest.raises(P.ParseError):
            P.parse_spec("power(p=2) extra")

    def test_string_argument(self):
        tree = P.parse_spec("table(path='data.csv')")
        assert tree.arg_dict()["path"] == "data.csv"

    def test_numbers_with_exponent(self):
        tree = P.parse_spec("power(p=1.5e0)")
        assert tree.arg_dict()["p"] == 1.5


class TestRoundTrip:
    CASES = [
        "power(p=2)",
        "zygmund(q=2, a=-1.5)",
        "exp_power(beta=0.75)",
        "linf()",
        "glue(zero=power(p=2), inf=power(p=1), t_s=0.5)",
        "table(path='x.csv')",
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_fixed_cases(self, text):
        tree = P.parse_spec(text)
        assert P.parse_spec(P.print_tree(tree)) == tree

    @settings(max_examples=60, deadline=None)
    @given(st.recursive(
        st.builds(
            P.SpecExpression,
            st.sampled_from(["power", "zygmund", "exp_power", "linf"]),
            st.lists(st.tuples(st.sampled_from(["p", "q", "a", "beta"]),
                               st.floats(-100, 100).filter(lambda x: x == x)),
                     max_size=3, unique_by=lambda kv: kv[0]).map(tuple),
        ),
        lambda kids: st.builds(
            P.SpecExpression,
            st.just("glue"),
            st.tuples(st.tuples(st.just("zero"), kids), st.tuples(st.just("inf"), kids)),
        ),
        max_leaves=4,
    ))
    def test_property_round_trip(self, tree):
        assert P.parse_spec(P.print_tree(tree)) == tree


class TestToYoung:
    def test_build(self):
        fn = P.parse_young("zygmund(q=2, a=1)")
        assert fn(1.0) > 0

    def test_rejects_string_for_number(self):
        with pytest.raises(SpecError):
            P.to_young_spec(P.parse_spec("power(p='x')"))

    def test_rejects_bad_parameter(self):
        with pytest.raises(SpecError):
            P.parse_young("zygmund(q=0.5, a=1)")
