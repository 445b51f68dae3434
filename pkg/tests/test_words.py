import pytest
from hypothesis import given, strategies as st

from gcsurgery.errors import InvalidGeneratorError, WordSyntaxError
from gcsurgery.groups import FreeWord, commutator_word, cyclically_reduce, parse_word, reduce_word
from gcsurgery.groups.words import canonical_cyclic

from conftest import letters, words

NAMES = ("a", "b", "c")


def stack_reduce(seq):
    """Independent oracle: cancel adjacent inverse letters with a stack."""
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_oracle(seq):
    seq = stack_reduce(seq)
    while len(seq) >= 2 and seq[0] == -seq[-1]:
        seq = seq[1:-1]
    return seq


@given(letters(3, 30))
def test_reduction_matches_stack_oracle(seq):
    assert FreeWord.from_letters(seq).flat() == stack_reduce(seq)


@given(letters(3, 30))
def test_reduce_word_normalises_raw_syllables(seq):
    raw = FreeWord(tuple((abs(x) - 1, 1 if x > 0 else -1) for x in seq))
    assert reduce_word(raw).flat() == stack_reduce(seq)
    assert reduce_word(raw).is_reduced()


@given(words(3), words(3), words(3))
def test_group_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * ~u == FreeWord()
    assert ~(u * v) == ~v * ~u
    assert u * FreeWord() == u


@given(words(3), st.integers(-4, 4))
def test_power(u, n):
    expected = FreeWord()
    for _ in range(abs(n)):
        expected = expected * (u if n > 0 else ~u)
    assert u ** n == expected


@given(letters(3, 30))
def test_cyclic_reduction_matches_oracle(seq):
    assert cyclically_reduce(FreeWord.from_letters(seq)).flat() == cyclic_oracle(seq)


@given(words(3), words(3))
def test_canonical_cyclic_is_conjugation_invariant(u, c):
    assert canonical_cyclic(c * u * ~c) == canonical_cyclic(u)


@given(words(3), words(3))
def test_commutator_convention(u, v):
    assert commutator_word(u, v) == u * v * ~u * ~v


@given(words(3))
def test_exponent_sums(u):
    sums = [0, 0, 0]
    for x in u.flat():
        sums[abs(x) - 1] += 1 if x > 0 else -1
    assert u.exponent_sums(3) == sums


@given(words(3))
def test_format_parse_round_trip(u):
    assert parse_word(u.format(NAMES), NAMES) == u


@pytest.mark.parametrize("text, flat", [
    ("a", [1]),
    ("a^-1 b", [-1, 2]),
    ("a*b*a^-1", [1, 2, -1]),
    ("[a,b]", [1, 2, -1, -2]),
    ("[a^-1,b^-1]", [-1, -2, 1, 2]),
    ("(a b)^2", [1, 2, 1, 2]),
    ("[a,b]^-1", [2, 1, -2, -1]),
    ("1", []),
    ("a a^-1", []),
])
def test_parse_examples(text, flat):
    assert parse_word(text, NAMES).flat() == flat


def test_identity_formats_as_one():
    assert FreeWord().format(NAMES) == "1"


@pytest.mark.parametrize("text", ["a^", "[a,b", "a)", "^2", "[a]"])
def test_syntax_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text, NAMES)


def test_unknown_generator_reports_column():
    with pytest.raises(WordSyntaxError) as info:
        parse_word("a ab", NAMES)
    assert info.value.column is not None


def test_generator_index_out_of_range():
    from gcsurgery.groups import Presentation
    with pytest.raises(InvalidGeneratorError):
        Presentation(("a",), (FreeWord.gen(3),))
