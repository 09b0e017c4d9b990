import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metricat.extrat import INF, ZERO, ExtRat, rat


def rats():
    return st.builds(ExtRat, st.integers(0, 40), st.integers(1, 12))


def ext_rats():
    return st.one_of(rats(), st.just(INF))


class TestParsing:
    def test_integer_literal(self):
        assert ExtRat.parse("3") == ExtRat(3)

    def test_fraction_literal(self):
        assert ExtRat.parse("3/2") == ExtRat(3, 2)

    def test_inf_literal(self):
        assert ExtRat.parse("inf") is INF

    def test_zero(self):
        assert ExtRat.parse("0") == ZERO

    def test_unreduced_fraction_reduces(self):
        assert ExtRat.parse("6/4") == ExtRat(3, 2)
        assert str(ExtRat.parse("6/4")) == "3/2"

    @pytest.mark.parametrize("bad", ["-1", "1/0", "x", "1.5", "", "1/-2", "+3"])
    def test_rejects_garbage(self, bad):
        with pytest.raises(ValueError):
            ExtRat.parse(bad)

    def test_rejects_non_string(self):
        with pytest.raises(TypeError):
            ExtRat.parse(3)

    def test_rat_coercions(self):
        assert rat(2) == ExtRat(2)
        assert rat("5/3") == ExtRat(5, 3)
        assert rat(INF) is INF
        with pytest.raises(TypeError):
            rat(1.5)
        with pytest.raises(TypeError):
            rat(True)

    def test_constructor_rejects_bad_args(self):
        with pytest.raises(ZeroDivisionError):
            ExtRat(1, 0)
        with pytest.raises(ValueError):
            ExtRat(-1)
        with pytest.raises(TypeError):
            ExtRat(1.0)


class TestStringForm:
    def test_integer(self):
        assert str(ExtRat(7)) == "7"

    def test_fraction(self):
        assert str(ExtRat(7, 2)) == "7/2"

    def test_inf(self):
        assert str(INF) == "inf"

    @given(ext_rats())
    def test_round_trip(self, x):
        assert ExtRat.parse(str(x)) == x


class TestOrdering:
    def test_chain(self):
        vals = [rat("0"), rat("1/2"), rat("1"), rat("3/2"), INF]
        for a, b in zip(vals, vals[1:]):
            assert a < b
            assert b > a
            assert a <= b
            assert not (b <= a)

    def test_inf_is_top(self):
        assert INF <= INF
        assert not (INF < INF)
        assert rat(1000000) < INF

    @given(ext_rats(), ext_rats())
    def test_totality(self, a, b):
        assert (a <= b) or (b <= a)
        assert (a < b) == (a <= b and a != b)

    @given(ext_rats(), ext_rats(), ext_rats())
    def test_transitivity(self, a, b, c):
        if a <= b and b <= c:
            assert a <= c


class TestArithmetic:
    def test_exact_addition(self):
        assert rat("1/2") + rat("1/3") == rat("5/6")

    def test_addition_saturates(self):
        assert INF + rat(1) is INF
        assert rat(1) + INF is INF
        assert INF + INF is INF

    def test_scaling(self):
        assert 2 * rat("3/2") == rat(3)
        assert rat("1/2") * 3 == rat("3/2")
        assert 2 * INF is INF

    def test_scaling_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            0 * rat(1)
        with pytest.raises(ValueError):
            (-2) * rat(1)

    @given(ext_rats(), ext_rats())
    def test_addition_commutes(self, a, b):
        assert a + b == b + a

    @given(ext_rats(), ext_rats(), ext_rats())
    def test_addition_associates(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(ext_rats(), ext_rats())
    def test_addition_monotone(self, a, b):
        assert a <= a + b

    @given(ext_rats())
    def test_zero_is_neutral(self, a):
        assert a + ZERO == a


class TestValueSemantics:
    def test_immutable(self):
        x = rat(1)
        with pytest.raises(AttributeError):
            x._num = 5

    def test_hash_consistent_with_eq(self):
        d = {rat("2/4"): "a"}
        assert d[rat("1/2")] == "a"
        assert rat("1/2") in {rat("2/4")}

    def test_reduced_representation(self):
        x = ExtRat(10, 4)
        assert (x.numerator, x.denominator) == (5, 2)

    def test_flags(self):
        assert INF.is_infinite
        assert not INF.is_zero
        assert ZERO.is_zero
        assert not rat("1/2").is_zero

    @given(ext_rats())
    def test_pickle_round_trip(self, x):
        clone = pickle.loads(pickle.dumps(x))
        assert clone == x
        assert str(clone) == str(x)
