import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from src.models.Formula_Model import BOT, And, Atom, Fragment, Impl, Neg, Or, is_neg
from src.services.syntax_service import (
    atoms_of, fragment_of, node_count, parse, print_context, print_formula, subformulas, weight,
)
from src.utils.errors import FormulaSyntaxError, InputFileError
from src.utils.formula_parser import parse_context
from tests.conftest import formulas

p0, p1, p2 = Atom(0), Atom(1), Atom(2)


class TestParse:

    def test_arrow_associates_to_the_right(self):
        assert parse("p0 -> p1 -> p2") == Impl(p0, Impl(p1, p2))

    def test_and_binds_tighter_than_or(self):
        assert parse("p0 | p1 & p2") == Or(p0, And(p1, p2))

    def test_or_associates_to_the_left(self):
        assert parse("p0 | p1 | p2") == Or(Or(p0, p1), p2)

    def test_negation_is_implication_to_bot(self):
        assert parse("~~p0") == Neg(Neg(p0))
        assert parse("~p0") == Impl(p0, BOT)
        assert is_neg(parse("~p0"))

    def test_unicode_aliases(self):
        assert parse("⊥ ⊃ p0") == Impl(BOT, p0)
        assert parse("p0 ∧ ¬p1 ∨ p2") == Or(And(p0, Neg(p1)), p2)

    def test_falsum_and_parentheses(self):
        assert parse("false") == BOT
        assert parse("(p0 -> p1) -> p0") == Impl(Impl(p0, p1), p0)

    def test_whitespace_is_ignored(self):
        assert parse("  p12->(p3&p0)  ") == Impl(Atom(12), And(Atom(3), p0))

    def test_error_at_end_of_input(self):
        with pytest.raises(FormulaSyntaxError) as error:
            parse("p0 ->")
        assert error.value.offset == 5
        assert error.value.expected

    def test_error_at_unknown_character(self):
        with pytest.raises(FormulaSyntaxError) as error:
            parse("p0 $ p1")
        assert error.value.offset == 3

    def test_error_offset_counts_utf8_bytes(self):
        with pytest.raises(FormulaSyntaxError) as error:
            parse("⊥ ⊃ $")
        assert error.value.offset == 8

    def test_empty_text_is_an_error(self):
        with pytest.raises(FormulaSyntaxError) as error:
            parse("")
        assert error.value.offset == 0


class TestPrint:

    @pytest.mark.parametrize("formula, text", [
        (Impl(Impl(p0, p1), p2), "(p0 -> p1) -> p2"),
        (Impl(p0, Impl(p1, p2)), "p0 -> p1 -> p2"),
        (Or(p0, Or(p1, p2)), "p0 | (p1 | p2)"),
        (Or(Or(p0, p1), p2), "p0 | p1 | p2"),
        (And(Or(p0, p1), p2), "(p0 | p1) & p2"),
        (Neg(And(p0, p1)), "~(p0 & p1)"),
        (Neg(Neg(p0)), "~~p0"),
        (Impl(BOT, BOT), "~false"),
        (Impl(p0, Neg(p1)), "p0 -> ~p1"),
        (Impl(Neg(p0), p1), "~p0 -> p1"),
    ])
    def test_minimal_parentheses(self, formula, text):
        assert print_formula(formula) == text

    def test_unicode_rendering(self):
        assert print_formula(Or(p0, Neg(p0)), unicode=True) == "p0 ∨ ~p0"
        assert print_formula(Impl(BOT, And(p0, p1)), unicode=True) == "⊥ ⊃ p0 ∧ p1"

    def test_context_is_printed_in_code_order(self):
        assert print_context({Impl(p0, p0), p1, BOT}) == "{false, p1, p0 -> p0}"

    @given(formulas())
    @settings(max_examples=300)
    def test_print_then_parse_is_identity(self, p):
        assert parse(print_formula(p)) == p
        assert parse(print_formula(p, unicode=True)) == p


class TestParseContext:

    def test_empty_argument_is_empty_context(self):
        assert parse_context("") == frozenset()

    def test_inline_context(self):
        assert parse_context("p0, p1 -> p0") == frozenset({p0, Impl(p1, p0)})

    def test_context_file(self, write_file):
        path = write_file("ctx.txt", "# hypotheses\np0\n\np0 -> p1\n")
        assert parse_context(path) == frozenset({p0, Impl(p0, p1)})

    def test_bad_member_raises(self):
        with pytest.raises(FormulaSyntaxError):
            parse_context("p0, p1 ->")

    def test_context_file_that_is_not_utf8(self, tmp_path):
        path = tmp_path / "latin1.txt"
        path.write_bytes(b"p0\n\xff\n")
        with pytest.raises(InputFileError):
            parse_context(str(path))


class TestStructure:

    def test_node_count_and_weight(self):
        p = Impl(Or(p0, p2), BOT)
        assert node_count(p) == 5
        assert weight(p) == 1 + (1 + 1 + 3) + 1

    def test_atoms_of(self):
        assert atoms_of(Impl(p0, Or(p2, BOT)), p1) == frozenset({0, 1, 2})
        assert atoms_of(BOT) == frozenset()

    def test_subformulas_of_excluded_middle(self):
        f = subformulas(Or(p0, Neg(p0)))
        assert set(f) == {BOT, p0, Neg(p0), Or(p0, Neg(p0))}
        assert f.disjunctions == (Or(p0, Neg(p0)),)
        assert f.implications == (Neg(p0),)

    def test_fragment_always_contains_bot(self):
        assert BOT in subformulas(p0)
        assert len(fragment_of()) == 1

    def test_fragment_of_several_formulas(self):
        f = fragment_of(Impl(p0, p1), And(p1, p2))
        assert set(f) == {BOT, p0, p1, p2, Impl(p0, p1), And(p1, p2)}

    def test_fragment_rejects_missing_subformula(self):
        with pytest.raises(ValidationError):
            Fragment(formulas=(BOT, Impl(p0, p1)))

    def test_fragment_rejects_missing_bot(self):
        with pytest.raises(ValidationError):
            Fragment(formulas=(p0,))

    @given(formulas())
    def test_subformulas_are_closed(self, p):
        f = subformulas(p)
        assert p in f
        for q in f:
            if isinstance(q, (Impl, And, Or)):
                assert q.lhs in f and q.rhs in f
