import pytest

from qsymkit.compositions import (Composition, CompositionError, EMPTY, compositions_of, concat, dotplus, lex_cmp,
                                  reverse)
from qsymkit.qsymkit_types import Ordering


class TestComposition:

    def test_weight_and_length(self):
        alpha = Composition.of(2, 3, 2)
        assert alpha.weight == 7
        assert alpha.length == len(alpha) == 3
        assert EMPTY.weight == 0 and not EMPTY

    @pytest.mark.parametrize("parts", ((0,), (1, -2), (3, 0, 1)))
    def test_non_positive_parts(self, parts):
        with pytest.raises(CompositionError):
            Composition(parts)

    @pytest.mark.parametrize("part", (1.0, "1", True))
    def test_non_integer_parts(self, part):
        with pytest.raises(TypeError):
            Composition((part,))

    @pytest.mark.parametrize("text, parts", (("232", (2, 3, 2)),
                                             ("(1,10)", (1, 10)),
                                             ("1, 2", (1, 2)),
                                             ("()", ()),
                                             ("", ())))
    def test_parse(self, text, parts):
        assert Composition.parse(text).parts == parts

    def test_parse_garbage(self):
        with pytest.raises(CompositionError):
            Composition.parse("(1,x)")

    @pytest.mark.parametrize("text", ("10", "101", "0", "2302"))
    def test_parse_zero_digit_in_compact_form(self, text):
        with pytest.raises(CompositionError, match="zero digit"):
            Composition.parse(text)

    def test_parse_multi_digit_parts_need_separators(self):
        assert Composition.parse("(101)").parts == (101,)
        assert Composition.parse("10,1").parts == (10, 1)

    def test_compact(self):
        assert Composition.of(2, 3, 1, 1).compact() == "2311"
        assert str(Composition.of(1, 10)) == "(1,10)"
        with pytest.raises(CompositionError):
            Composition.of(1, 10).compact()


class TestOrder:

    def test_lex_order(self):
        ordered = [EMPTY, Composition.of(1), Composition.of(1, 1), Composition.of(1, 2), Composition.of(2)]
        assert sorted(reversed(ordered)) == ordered

    def test_prefix_is_smaller(self):
        assert lex_cmp(Composition.of(2), Composition.of(2, 1)) is Ordering.LESS
        assert lex_cmp(Composition.of(2, 1), Composition.of(2)) is Ordering.GREATER
        assert lex_cmp(Composition.of(1, 2), Composition.of(1, 2)) is Ordering.EQUAL

    def test_from_sign(self):
        assert Ordering.from_sign(-7) is Ordering.LESS
        assert Ordering.from_sign(0) is Ordering.EQUAL
        assert Ordering.from_sign(3) is Ordering.GREATER


class TestOperations:

    def test_concat(self):
        assert concat(Composition.of(1, 2), Composition.of(3)) == Composition.of(1, 2, 3)
        assert Composition.of(1).concat(EMPTY) == Composition.of(1)

    def test_dotplus_keeps_surplus(self):
        assert dotplus(Composition.of(1, 2), Composition.of(3)) == Composition.of(4, 2)
        assert dotplus(EMPTY, Composition.of(2, 1)) == Composition.of(2, 1)

    def test_reverse(self):
        assert reverse(Composition.of(1, 2, 3)) == Composition.of(3, 2, 1)
        assert Composition.of(2).reverse() == Composition.of(2)


@pytest.mark.parametrize("n, count", ((0, 1), (1, 1), (2, 2), (3, 4), (5, 16), (7, 64)))
def test_compositions_of_count(n, count):
    listed = list(compositions_of(n))
    assert len(listed) == len(set(listed)) == count
    assert all(alpha.weight == n for alpha in listed)


def test_compositions_of_lex_descending():
    listed = list(compositions_of(4))
    assert listed == sorted(listed, reverse=True)
    assert listed[0] == Composition.of(4)
    assert listed[-1] == Composition.of(1, 1, 1, 1)


def test_compositions_of_negative():
    with pytest.raises(CompositionError):
        list(compositions_of(-1))
