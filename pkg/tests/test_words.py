import random

import pytest

from growthlab.words import Word, WordSyntaxError, commutator


def test_parse_and_str_round_trip():
    w = Word.parse("x^2 y^-1 x")
    assert str(w) == "x^2 y^-1 x"
    assert Word.parse(str(w)) == w


def test_parse_merges_adjacent_runs():
    assert Word.parse("x x") == Word.parse("x^2")
    assert Word.parse("x x^-1 y") == Word.parse("y")
    assert Word.parse("x^3 x^-3") == Word()


def test_identity_prints_as_marker():
    assert str(Word()) == "<identity>"


def test_parse_rejects_bad_letters():
    with pytest.raises(WordSyntaxError):
        Word.parse("x^0")
    with pytest.raises(WordSyntaxError):
        Word.parse("2x")
    with pytest.raises(WordSyntaxError):
        Word.parse("x^")


def test_of_drops_zero_exponents():
    assert Word.of([("x", 2), ("y", 0), ("x", -2)]) == Word()


def test_inverse_and_product():
    w = Word.parse("x y^-2")
    assert w * w.inverse() == Word()
    assert w.inverse().inverse() == w


def test_concat_is_associative_on_random_words():
    rng = random.Random(11)
    names = ["x", "y", "z"]
    for _ in range(300):
        ws = []
        for _ in range(3):
            pairs = [(rng.choice(names), rng.choice([-2, -1, 1, 2]))
                     for _ in range(rng.randrange(5))]
            ws.append(Word.of(pairs))
        a, b, c = ws
        assert (a * b) * c == a * (b * c)


def test_length_counts_letters_with_multiplicity():
    assert Word.parse("x^3 y^-2").length() == 5
    assert Word().length() == 0


def test_rename_and_names():
    w = Word.parse("x y x^-1")
    assert w.names() == {"x", "y"}
    assert str(w.rename({"x": "a"})) == "a y a^-1"


def test_commutator_shape():
    a, b = Word.parse("x"), Word.parse("y")
    assert str(commutator(a, b)) == "x y x^-1 y^-1"
    assert commutator(a, a) == Word()


def test_conjugate_by():
    a, c = Word.parse("x"), Word.parse("y")
    assert str(a.conjugate_by(c)) == "y x y^-1"
