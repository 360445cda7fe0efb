import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfrel.errors import AlphabetError, CarrierMismatchError
from sfrel.words import (
    Alphabet,
    Occurrence,
    concat,
    find_square,
    is_square_free,
    occ_contains,
    occ_intersect,
    occ_intersection,
    occ_union,
    occurrences,
)
from tests.oracles import has_square, leftmost_shortest_square, thue_by_substitution

words3 = st.text(alphabet="abc", max_size=40)


def occ(text):
    """Parse the ``p*e*q`` notation used in examples."""
    p, e, q = text.split("*")
    return Occurrence(p, e, q)


# -- alphabet and parsing ----------------------------------------------------


def test_alphabet_rejects_duplicates_and_reserved():
    with pytest.raises(AlphabetError):
        Alphabet(("a", "a"))
    with pytest.raises(AlphabetError):
        Alphabet(("a", "|"))
    with pytest.raises(AlphabetError):
        Alphabet(())


def test_parse_format_round_trip_multichar():
    a = Alphabet(("x", "y1", "y2", "z"))
    w = a.parse("x[y1 y2]z[y2]")
    assert len(w) == 5
    assert a.tokens(w) == ["x", "y1", "y2", "z", "y2"]
    assert a.parse(a.format(w)) == w
    assert a.parse("ε") == "" and a.parse("[]") == ""


def test_unknown_symbol():
    with pytest.raises(AlphabetError):
        Alphabet.of("ab").parse("abc")


def test_shortlex_follows_declaration_order():
    a = Alphabet.of("cba")
    assert a.sorted(["a", "c", "ab", "", "cc"]) == ["", "c", "a", "cc", "ab"]


# -- concat ------------------------------------------------------------------


def test_concat_examples():
    assert concat("", "abc") == "abc"
    assert concat("ab", "c") == "abc"
    assert concat("a", "a") == "aa"
    with pytest.raises(AlphabetError):
        concat("a", "z", Alphabet.of("ab"))


@given(words3, words3, words3)
def test_concat_monoid_laws(x, y, z):
    assert concat(concat(x, y), z) == concat(x, concat(y, z))
    assert concat("", x) == x == concat(x, "")


# -- squares -----------------------------------------------------------------


@pytest.mark.parametrize("w, expected", [
    ("aa", ("", "a", "")),
    ("abab", ("", "ab", "")),
    ("abcbac", None),
    ("cabab", ("c", "ab", "")),
    ("", None),
    ("abcacb", None),
])
def test_find_square_examples(w, expected):
    assert find_square(w) == expected


@given(words3)
def test_find_square_matches_brute_force(w):
    assert (find_square(w) is not None) == has_square(w)
    assert find_square(w) == leftmost_shortest_square(w)


@settings(max_examples=60)
@given(st.text(alphabet="abc", min_size=160, max_size=400))
def test_long_words_use_same_witness(w):
    assert find_square(w) == leftmost_shortest_square(w)


def test_long_square_free_word():
    w = thue_by_substitution(5000)
    assert is_square_free(w)
    assert find_square(w + w[-1]) is not None


@given(words3)
def test_witness_reassembles(w):
    sq = find_square(w)
    if sq is not None:
        u, s, v = sq
        assert s and u + s + s + v == w


# -- occurrences -------------------------------------------------------------


@pytest.mark.parametrize("outer, inner, expected", [
    ("*abc*", "a*b*c", True),
    ("a*b*c", "*abc*", False),
    ("*ab*c", "a*bc*", False),
])
def test_contains_examples(outer, inner, expected):
    assert occ_contains(occ(outer), occ(inner)) is expected


@pytest.mark.parametrize("phi, psi, expected", [
    ("*ab*c", "a*bc*", "a*b*c"),
    ("*a*bc", "ab*c*", None),
    ("*abc*", "a*b*c", "a*b*c"),
])
def test_intersection_examples(phi, psi, expected):
    got = occ_intersection(occ(phi), occ(psi))
    assert got == (occ(expected) if expected else None)


@pytest.mark.parametrize("phi, psi, expected", [
    ("*a*bc", "ab*c*", "*abc*"),
    ("*ab*c", "a*bc*", "*abc*"),
    ("a*b*c", "a*b*c", "a*b*c"),
])
def test_union_examples(phi, psi, expected):
    assert occ_union(occ(phi), occ(psi)) == occ(expected)


def test_carrier_mismatch():
    with pytest.raises(CarrierMismatchError):
        occ_union(occ("*ab*"), occ("a*b*c"))


spans = st.tuples(st.integers(0, 8), st.integers(0, 8)).map(sorted)


@given(st.text(alphabet="ab", min_size=8, max_size=8), spans, spans, spans)
def test_occurrence_laws(w, s1, s2, s3):
    f, g, h = (Occurrence.at(w, *s) for s in (s1, s2, s3))
    assert occ_union(f, g) == occ_union(g, f)
    assert occ_union(occ_union(f, g), h) == occ_union(f, occ_union(g, h))
    assert occ_intersection(f, g) == occ_intersection(g, f)
    assert occ_contains(occ_union(f, g), f)
    meet = occ_intersection(f, g)
    if meet is not None:
        assert occ_contains(f, meet) and occ_contains(g, meet)
    assert occ_intersect(f, g) == (max(f.start, g.start) < min(f.end, g.end))


@given(st.text(alphabet="ab", max_size=12), st.text(alphabet="ab", min_size=1, max_size=3))
def test_occurrences_enumerates_every_position(w, base):
    found = list(occurrences(w, base))
    assert [o.start for o in found] == [i for i in range(len(w)) if w.startswith(base, i)]
    assert all(o.carrier == w and o.base == base for o in found)
