import pytest

from udrs.grammar import (
    COORD, FUNCTIONAL, SEP, SILENT, ParseFailure, bracketed, parse, tokenize,
    yield_tokens,
)


class TestTokenize:
    def test_simple_sentence(self):
        assert tokenize("The lawyers hired a secretary.") == [
            "the", "lawyers", "hired", "a", "secretary", SEP]

    def test_empty(self):
        assert tokenize("") == []

    def test_that_clause(self):
        toks = tokenize("Every lawyer believed that a clerk left.")
        assert "that" in toks

    def test_and_becomes_separator(self):
        assert tokenize("John left and Mary left.") == [
            "john", "left", SEP, "mary", "left", SEP]

    def test_case_folding(self):
        assert tokenize("JOHN Left") == ["john", "left"]


class TestParse:
    def test_unambiguous_transitive(self):
        derivs = parse(tokenize("the lawyers hired a secretary"))
        assert len(derivs) == 1

    def test_unambiguous_with_final_period(self):
        derivs = parse(tokenize("The lawyers hired a secretary."))
        assert len(derivs) == 1
        assert derivs[0].trailing_sep

    def test_embedded_clause_has_functional_node(self):
        (deriv,) = parse(tokenize("every lawyer believed that a clerk left"))
        functional = []

        def walk(n):
            if n.construction == FUNCTIONAL and n.head.word == "that":
                functional.append(n)
            for c in n.children():
                walk(c)

        walk(deriv)
        assert len(functional) == 1

    def test_root_wrapped_in_silent_complementizer(self):
        (deriv,) = parse(tokenize("john left"))
        assert deriv.construction == FUNCTIONAL
        assert deriv.head.word == SILENT

    def test_missing_subject_fails(self):
        with pytest.raises(ParseFailure) as info:
            parse(tokenize("hired the lawyers"))
        assert info.value.position == 3

    def test_unknown_word_position(self):
        with pytest.raises(ParseFailure) as info:
            parse(tokenize("john saw mary"))
        assert info.value.position == 1

    def test_determiner_agreement_blocks(self):
        with pytest.raises(ParseFailure):
            parse(tokenize("the lawyer left"))   # plural "the" with singular noun
        with pytest.raises(ParseFailure):
            parse(tokenize("a lawyers left"))

    def test_empty_input(self):
        assert parse([]) == []

    def test_discourse_coordination(self):
        (deriv,) = parse(tokenize("John left. Mary left."))
        assert deriv.construction == COORD
        assert deriv.head.construction == FUNCTIONAL
        assert deriv.nonhead.construction == FUNCTIONAL

    def test_three_sentences_fold_left(self):
        (deriv,) = parse(tokenize("John left. Mary left. John left."))
        assert deriv.construction == COORD
        assert deriv.head.construction == COORD


SENTENCES = [
    "The lawyers hired a secretary.",
    "Every lawyer hired a secretary.",
    "Every lawyer believed that a clerk left.",
    "Every lawyer believed that every clerk left.",
    "John hired a secretary.",
    "John left",
    "The lawyers gathered.",
    "Mary met every student.",
    "John left. Mary left.",
    "The lawyers hired a secretary. They shared an office.",
]


@pytest.mark.parametrize("text", SENTENCES)
def test_yield_inverts_parse(text):
    tokens = tokenize(text)
    for deriv in parse(tokens):
        assert yield_tokens(deriv) == tokens


@pytest.mark.parametrize("text", SENTENCES)
def test_single_derivation_per_sentence(text):
    assert len(parse(tokenize(text))) == 1


def test_binary_branching_throughout():
    (deriv,) = parse(tokenize("every lawyer believed that a clerk left."))

    def walk(n):
        kids = n.children()
        if n.construction == "lexical":
            assert kids == []
        else:
            assert len(kids) == 2
        for c in kids:
            walk(c)

    walk(deriv)


def test_bracketed_rendering():
    (deriv,) = parse(tokenize("john left"))
    text = bracketed(deriv)
    assert "(john)" in text and "(left)" in text
    assert "[head_subj" in text
