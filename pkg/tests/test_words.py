import itertools

import pytest
from hypothesis import given, strategies as st

from ncgb.words import (
    Alphabet,
    Antichain,
    compare_deglex,
    is_lyndon,
    lyndon_factorize,
    normal_words,
    plex_greater,
    sort_deglex,
)
from oracles import all_factorizations, lyndon_factorizations, normal_count, rotations_lyndon, words_of, words_up_to

X = Alphabet.standard(2)
P = X.parse
word2 = st.text(alphabet="ab", min_size=0, max_size=9)
nonempty = st.text(alphabet="ab", min_size=1, max_size=10)

# leading words of family A, frozen from the reduced basis
A_LW = [P("x2*x1^2"), P("x2^2*x1*x2*x1"), P("x2^4*x1"), P("x2^3*x1*x2^2*x1")]


def test_parse_render_round_trip():
    w = P("x2*x1^2")
    assert w == "baa"
    assert X.render(w) == "x2*x1^2"
    assert X.degree(w) == (2, 1)
    assert X.render("") == "1"


def test_deglex_examples():
    assert compare_deglex(P("x2"), P("x1"), X) == 1
    assert compare_deglex(P("x2*x1^2"), P("x1*x2*x1"), X) == 1
    assert compare_deglex(P("x1^3"), P("x2*x1"), X) == 1
    assert compare_deglex(P("x1*x2"), P("x1*x2"), X) == 0


def test_deglex_degree_tie_break_prefers_second_component():
    # (1,2) beats (2,1) at equal total degree, whatever the letters
    assert compare_deglex(P("x1*x2^2"), P("x2*x1^2"), X) == 1


def test_three_letter_tie_break_reads_components_right_to_left():
    Y = Alphabet.standard(3)
    assert compare_deglex(Y.parse("x1*x3"), Y.parse("x2^2"), Y) == 1
    assert compare_deglex(Y.parse("x2*x3"), Y.parse("x1*x3"), Y) == 1


def test_custom_precedence():
    Z = Alphabet(("x1", "x2"), ((1, 0), (0, 1)), ranks=(1, 0))
    assert compare_deglex(Z.parse("x1*x2"), Z.parse("x2*x1"), Z) == 1


@given(word2, word2, word2, word2)
def test_deglex_admissible(u, v, w1, w2):
    c = compare_deglex(u, v, X)
    assert compare_deglex(v, u, X) == -c
    assert (c == 0) == (u == v)
    assert compare_deglex(w1 + u + w2, w1 + v + w2, X) == c
    if u:
        assert compare_deglex(u, "", X) == 1


@given(word2, word2, word2)
def test_deglex_transitive(u, v, w):
    a, b = compare_deglex(u, v, X), compare_deglex(v, w, X)
    if a == b == 1:
        assert compare_deglex(u, w, X) == 1


def test_is_lyndon_examples():
    assert is_lyndon(P("x2*x1^2"))
    assert not is_lyndon(P("x1*x2"))
    assert is_lyndon(P("x2"))
    assert not is_lyndon("")


def test_is_lyndon_exhaustive_to_length_10():
    for w in words_up_to(10):
        assert is_lyndon(w) == rotations_lyndon(w), w


def test_lyndon_factorize_examples():
    assert lyndon_factorize(P("x2*x1")) == [P("x2*x1")]
    assert lyndon_factorize(P("x1*x2*x1")) == [P("x1"), P("x2*x1")]
    assert lyndon_factorize(P("x2*x1*x2")) == [P("x2*x1"), P("x2")]


def test_lyndon_factorize_exhaustive_to_length_10():
    for w in words_up_to(10):
        fac = lyndon_factorize(w)
        assert [fac] == lyndon_factorizations(w), w


@given(nonempty)
def test_lyndon_factorization_properties(u):
    fac = lyndon_factorize(u)
    assert "".join(fac) == u
    assert all(is_lyndon(f) for f in fac)
    assert all(not plex_greater(a, b) for a, b in zip(fac, fac[1:]))


def test_plex_prefix_rule():
    assert plex_greater(P("x2"), P("x2*x1"))
    assert not plex_greater(P("x2*x1"), P("x2"))


def test_normal_words_examples():
    assert normal_words([], (1, 1), X) == [P("x2*x1"), P("x1*x2")]
    assert normal_words([P("x2*x1^2")], (2, 1), X) == [P("x1*x2*x1"), P("x1^2*x2")]


def test_normal_words_family_a_degree_2_3():
    got = normal_words(A_LW, (2, 3), X)
    # 10 words of degree (2,3); 3 contain x2*x1^2 and one is x2^2*x1*x2*x1
    assert len(got) == 6
    assert all(not any(v in w for v in A_LW) for w in got)
    assert got == sort_deglex(got, X, reverse=True)


@given(st.lists(st.text(alphabet="ab", min_size=2, max_size=5), max_size=4), st.integers(0, 4), st.integers(0, 4))
def test_normal_words_match_brute_force(raw, a, b):
    V = [w for w in set(raw) if not any(u != w and u in w for u in raw)]
    got = normal_words(V, (a, b), X)
    assert len(got) == normal_count(V, (a, b))
    assert set(got) == {w for w in words_of((a, b)) if not any(v in w for v in V)}


def test_antichain_rejects_factors():
    with pytest.raises(ValueError):
        Antichain([P("x2*x1"), P("x2*x1^2")])
    with pytest.raises(ValueError):
        Antichain([""])
    assert len(Antichain(A_LW)) == 4


@given(st.lists(st.text(alphabet="ab", min_size=1, max_size=6), min_size=1, max_size=5))
def test_antichain_accepts_exactly_factor_free_sets(raw):
    ws = set(raw)
    ok = not any(u != v and u in v for u, v in itertools.product(ws, ws))
    if ok:
        assert Antichain(ws) == ws
    else:
        with pytest.raises(ValueError):
            Antichain(ws)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(("x", "x"), ((1,), (1,)))
    with pytest.raises(ValueError):
        Alphabet(("x",), ((0,),))


def test_all_factorizations_counts():
    assert sum(1 for _ in all_factorizations("abab")) == 8
