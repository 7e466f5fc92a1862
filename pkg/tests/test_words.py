import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphop import EMPTY, enumerate_ball, inverse, parse_word, product, range_, source, vertex
from graphop.graph import SignedEdge
from graphop.words import WordError, format_word, make_path, word_key

from strategies import (
    GRAPH_C, GRAPH_FAN, GRAPH_LOOP, GRAPH_PATH4, from_naive, graphs, load, naive, naive_product, naive_reduce,
    random_graph, random_word,
)


def brute_force_ball(g, n):
    """Every admissible letter sequence of length <= n, reduced naively."""
    found = {(v, v, ()) for v in g.vertices}
    signed = list(g.signed_edges())
    for k in range(1, n + 1):
        for seq in itertools.product(signed, repeat=k):
            if all(g.terminal(a) == g.initial(b) for a, b in zip(seq, seq[1:])):
                letters = naive_reduce(tuple((s.edge, s.orientation) for s in seq))
                start = g.initial(seq[0])
                found.add((start, g.terminal(seq[-1]), letters) if letters else (start, start, ()))
    return found


def test_ball_counts_on_graph_c():
    g = load(GRAPH_C)
    assert len(enumerate_ball(g, 1)) == 6
    ball2 = enumerate_ball(g, 2)
    assert len(ball2) == 10
    assert [format_word(w) for w in ball2.words[6:]] == ["e1 e2^-1", "e1^-1 e2", "e2 e1^-1", "e2^-1 e1"]


@pytest.mark.parametrize("text", [GRAPH_C, GRAPH_FAN, GRAPH_LOOP, GRAPH_PATH4])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_ball_matches_brute_force(text, n):
    g = load(text)
    ball = enumerate_ball(g, n)
    assert len(set(ball.words)) == len(ball)
    assert {naive(w) for w in ball.words} == brute_force_ball(g, n)
    keys = [word_key(g, w) for w in ball.words]
    assert keys == sorted(keys)


def test_ball_order_vertices_first_then_lexicographic():
    g = load(GRAPH_C)
    assert [format_word(w) for w in enumerate_ball(g, 1).words] == ["@v1", "@v2", "e1", "e1^-1", "e2", "e2^-1"]


def test_source_and_range():
    g = load(GRAPH_PATH4)
    w = parse_word(g, "e2 e3")
    assert (source(w), range_(w)) == ("v2", "v4")
    with pytest.raises(WordError):
        range_(EMPTY)


def test_fan_products():
    g = load(GRAPH_FAN)
    e1, e3 = parse_word(g, "e1"), parse_word(g, "e3")
    assert product(e1, e3) is EMPTY
    assert product(e3, inverse(parse_word(g, "e2"))) == parse_word(g, "e3 e2^-1")
    assert inverse(parse_word(g, "e3 e2^-1")) == parse_word(g, "e2 e3^-1")


def test_loop_is_not_self_cancelling():
    g = load(GRAPH_LOOP)
    e2 = parse_word(g, "e2")
    assert product(e2, e2) == parse_word(g, "e2 e2")
    assert product(e2, inverse(e2)) == vertex("v2")


def test_parse_word_reduces_and_rejects():
    g = load(GRAPH_C)
    assert parse_word(g, "e1 e1^-1") == vertex("v1")
    assert parse_word(g, "e1 e2^-1 e2") == parse_word(g, "e1")
    for bad in ["e1 e1", "e9", "@v9", "", "e1^2"]:
        with pytest.raises(WordError):
            parse_word(g, bad)


def test_format_parse_round_trip():
    g = load(GRAPH_FAN)
    for w in enumerate_ball(g, 3).words:
        assert parse_word(g, format_word(w)) == w


@settings(max_examples=60)
@given(graphs(), st.integers(0, 2**32 - 1))
def test_product_agrees_with_naive_reduction(g, seed):
    rng = random.Random(seed)
    for _ in range(30):
        x, y = random_word(g, rng), random_word(g, rng)
        assert naive(product(x, y)) == naive_product(naive(x), naive(y))


@settings(max_examples=60)
@given(graphs(), st.integers(0, 2**32 - 1))
def test_groupoid_axioms(g, seed):
    rng = random.Random(seed)
    for _ in range(30):
        x, y, z = (random_word(g, rng) for _ in range(3))
        assert product(product(x, y), z) == product(x, product(y, z))
        assert inverse(inverse(x)) == x
        assert inverse(product(x, y)) == product(inverse(y), inverse(x))
        assert product(x, inverse(x)) == vertex(source(x))
        assert product(inverse(x), x) == vertex(range_(x))
        xy = product(x, y)
        if not xy.is_empty:
            assert source(xy) == source(x) and range_(xy) == range_(y)


def insert_cancelling_pair(g, w, rng):
    """Insert s s^-1 at a random admissible position of w's letter sequence."""
    letters = list(w.letters)
    pos = rng.randint(0, len(letters))
    at = w.start if pos == 0 else g.terminal(letters[pos - 1])
    options = [s for s in g.signed_edges() if g.initial(s) == at]
    if not options:
        return None
    s = rng.choice(options)
    return letters[:pos] + [s, s.twin()] + letters[pos:]


def test_cancellation_insertion_reduces_back():
    rng = random.Random(7)
    checked = 0
    while checked < 300:
        g = random_graph(rng)
        w = random_word(g, rng)
        seq = insert_cancelling_pair(g, w, rng)
        if seq is None:
            continue
        assert make_path(g, seq) == w
        checked += 1


def test_make_path_inadmissible_is_empty():
    g = load(GRAPH_FAN)
    assert make_path(g, [SignedEdge("e1"), SignedEdge("e3")]) is EMPTY
    assert from_naive(None) is EMPTY
