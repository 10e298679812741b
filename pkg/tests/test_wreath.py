import random

import pytest
from hypothesis import given, strategies as st

from oracles import lamplighter_ball, reduce_str, to_str
from wreathwalk.errors import ResourceGuardError
from wreathwalk.lamps import FiniteLampGroup
from wreathwalk.wreath import WreathProduct, default_group

G = default_group()
gens = G.generators()


@st.composite
def elements(draw, group=G, max_len=10):
    word = draw(st.lists(st.integers(0, len(group.generators()) - 1), max_size=max_len))
    s = group.generators()
    return group.product(s[i] for i in word)


class TestMultiply:
    def test_examples(self):
        g = G.parse("b=1,ab=1", "a")
        assert G.multiply(G.identity(), g) == g
        x = G.parse("1=1", "a")
        y = G.parse("1=1", "b")
        assert G.multiply(x, y) == G.parse("1=1,a=1", "ab")
        t = G.parse("1=1", "")
        assert G.multiply(t, t) == G.identity()

    @given(elements(), elements(), elements())
    def test_associative(self, x, y, z):
        assert G.multiply(G.multiply(x, y), z) == G.multiply(x, G.multiply(y, z))

    @given(elements())
    def test_identity_and_inverse(self, g):
        e = G.identity()
        assert G.multiply(e, g) == g == G.multiply(g, e)
        assert G.multiply(g, G.invert(g)) == e == G.multiply(G.invert(g), g)

    @given(elements(), elements())
    def test_no_identity_lamps(self, x, y):
        z = G.multiply(x, y)
        assert all(v != G.lamp.identity for v in z.lamps.values())


class TestInvert:
    def test_examples(self):
        assert G.invert(G.identity()) == G.identity()
        assert G.invert(G.parse("", "a")) == G.parse("", "A")
        g = G.parse("a=1", "b")
        assert G.multiply(g, G.invert(g)) == G.identity()


class TestWordLength:
    def test_lamp_cost(self):
        assert G.lamp_cost(G.config()) == 0
        assert G.lamp_cost(G.parse("a=1,b=1").lamps) == 2
        Z = WreathProduct.from_spec("Zd:1", "free:2")
        assert Z.lamp_cost(Z.parse("a=3,b=-2").lamps) == 5

    def test_examples(self):
        assert G.word_length(G.identity()) == 0
        assert G.word_length(G.parse("1=1", "")) == 1
        assert G.word_length(G.parse("b=1,ab=1", "a")) == 7

    @given(elements())
    def test_symmetric(self, g):
        assert G.word_length(g) == G.word_length(G.invert(g))

    @given(elements(), elements())
    def test_subadditive(self, x, y):
        assert G.word_length(G.multiply(x, y)) <= G.word_length(x) + G.word_length(y)

    @given(st.lists(st.integers(0, len(gens) - 1), max_size=12))
    def test_bounded_by_word(self, word):
        assert G.word_length(G.product(gens[i] for i in word)) <= len(word)

    def test_free_abelian_lamps_on_line(self):
        Z = WreathProduct.from_spec("Zd:1", "lattice:1")
        g = Z.parse("a=2,AA=-1", "A")
        # walk to a, set 2, walk to -2, set -1, return to -1: 1+3+1 moves, 3 lamp steps
        assert Z.word_length(g) == 8

    def test_lattice2_uses_dp(self):
        Z = WreathProduct.from_spec("Z2", "lattice:2")
        g = Z.parse("ab=1,B=1", "")
        assert Z.word_length(g) == 6 + 2

    def test_cap_guard(self):
        Z = WreathProduct.from_spec("Z2", "lattice:2")
        lamps = ",".join("a" * i + "=1" for i in range(1, 6))
        g = Z.parse(lamps, "")
        with pytest.raises(ResourceGuardError):
            Z.word_length(g, cap=3)
        approx = Z.word_length(g, approximate=True, cap=3)
        assert approx >= Z.word_length(g)


class TestBfsOracle:
    def test_small_balls(self):
        ball = G.bfs_oracle(0)
        assert list(v[1] for v in ball.values()) == [0]
        assert len(G.bfs_oracle(1)) == 6

    def test_matches_string_implementation(self):
        ours = G.bfs_oracle(4)
        ref = lamplighter_ball(4)
        assert len(ours) == len(ref)
        for g, d in ours.values():
            lit = frozenset(to_str(x) for x in g.lamps)
            assert ref[(lit, to_str(g.position))] == d

    def test_word_length_on_ball(self):
        for g, d in G.bfs_oracle(4).values():
            assert G.word_length(g) == d

    def test_guard(self):
        with pytest.raises(ResourceGuardError):
            G.bfs_oracle(5, guard=100)

    def test_z3_lamps(self):
        Z3 = WreathProduct(FiniteLampGroup.cyclic(3), G.base)
        for g, d in Z3.bfs_oracle(3).values():
            assert Z3.word_length(g) == d


def test_parse_and_format_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        g = G.product(rng.choice(gens) for _ in range(12))
        lamps, pos = G.format(g)
        assert G.parse(lamps.replace("+", ","), pos) == g
    assert reduce_str("aA") == ""
