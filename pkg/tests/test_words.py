import pytest

from morandim.words import Word, is_orthogonal, lcp, lex_less


def w(text, kappa=4):
    return Word.parse(text, kappa)


def test_lcp_basic():
    assert lcp(w("1213"), w("1221")) == w("12")
    assert lcp(w("12"), w("12")) == w("12")
    assert lcp(w("31"), w("11")) == Word.empty(4)


def test_lcp_alphabet_mismatch():
    with pytest.raises(ValueError):
        lcp(Word((1, 2), 2), Word((1, 2), 3))


def test_orthogonality():
    assert is_orthogonal(w("12"), w("13"))
    assert not is_orthogonal(w("12"), w("123"))
    assert not is_orthogonal(w("1"), w("1"))
    with pytest.raises(ValueError):
        is_orthogonal(Word.empty(4), w("1"))


def test_lex_order():
    assert lex_less(w("1"), w("12"))  # a proper prefix precedes its extensions
    assert lex_less(w("13"), w("21"))
    assert not lex_less(w("2"), w("2"))
    assert lex_less(w("12"), w("2"))  # first symbols decide before lengths
    assert not lex_less(w("12"), w("1"))


def test_symbol_validation():
    with pytest.raises(ValueError):
        Word((0,), 3)
    with pytest.raises(ValueError):
        Word((4,), 3)
    with pytest.raises(ValueError):
        Word((1,), 1)


def test_parent_prefix_concat():
    word = w("1213")
    assert word.parent == w("121")
    assert word.prefix(2) == w("12")
    assert word + w("2") == w("12132")
    assert w("12").is_prefix_of(word)
    with pytest.raises(ValueError):
        Word.empty(4).parent
