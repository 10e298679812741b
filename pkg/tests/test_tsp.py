import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import tsp_enumerate
from wreathwalk import tsp
from wreathwalk.base import FreeGroup, IntegerLattice
from wreathwalk.errors import ResourceGuardError

F2 = FreeGroup(2)
words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=7).map(F2.reduce)
vectors = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


def inst(start, points, end, g=F2):
    return tsp.TspInstance(g, g.parse(start), [g.parse(p) for p in points], g.parse(end))


class TestExamples:
    def test_empty(self):
        I = inst("ab", [], "BA")
        for solver in (tsp.solve_dp, tsp.solve_tree, tsp.brute_force):
            sol = solver(I)
            assert sol.value == 4 and sol.order == ()

    def test_single(self):
        I = inst("", ["bb"], "a")
        assert tsp.solve_dp(I).value == 2 + 3

    def test_two_points(self):
        I = inst("", ["b", "ab"], "a")
        sol = tsp.solve_dp(I)
        assert sol.value == 5 and sol.order == (F2.parse("b"), F2.parse("ab"))
        assert tsp.solve_tree(I).value == 5
        assert tsp.brute_force(I).value == 5
        assert len(tsp.steiner_tree(F2, [(), (1,), (2,), (1, 2)])) == 4

    def test_axis(self):
        I = inst("", ["aab", "aaaaaaab"], "a" * 10)
        assert tsp.solve_tree(I).value == 14
        assert tsp.solve_dp(I).value == 14


class TestAgreement:
    @given(words, st.lists(words, max_size=7), words)
    def test_tree_dp_brute(self, a, pts, b):
        I = tsp.TspInstance(F2, a, pts, b)
        vals = {tsp.solve_tree(I).value, tsp.solve_dp(I).value, tsp.brute_force(I).value}
        assert vals == {tsp_enumerate(F2.distance, a, I.points, b)}

    @given(vectors, st.lists(vectors, max_size=6), vectors)
    def test_lattice_dp_brute(self, a, pts, b):
        L = IntegerLattice(2)
        I = tsp.TspInstance(L, a, pts, b)
        assert tsp.solve_dp(I).value == tsp.brute_force(I).value == tsp_enumerate(L.distance, a, I.points, b)

    def test_large_tree_vs_dp(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            pts = {F2.random_word(rng, int(rng.integers(1, 8))) for _ in range(18)}
            I = tsp.TspInstance(F2, F2.random_word(rng, 4), pts, F2.random_word(rng, 4))
            assert tsp.solve_tree(I).value == tsp.solve_dp(I).value


class TestProperties:
    @given(words, st.lists(words, max_size=6), words, words)
    def test_monotone(self, a, pts, extra, b):
        small = tsp.solve_tree(tsp.TspInstance(F2, a, pts, b)).value
        big = tsp.solve_tree(tsp.TspInstance(F2, a, pts + [extra], b)).value
        assert small <= big

    @given(words, st.lists(words, max_size=6), words)
    def test_order_reevaluates(self, a, pts, b):
        I = tsp.TspInstance(F2, a, pts, b)
        for solver in (tsp.solve_tree, tsp.solve_dp, tsp.brute_force):
            sol = solver(I)
            assert sorted(sol.order, key=F2.sort_key) == list(I.points)
            assert I.path_length(sol.order) == sol.value
            assert sol.value >= F2.distance(a, b)

    @given(words, words, st.data())
    def test_points_on_geodesic_are_free(self, a, b, data):
        verts = F2.geodesic(a, b).vertices
        pts = data.draw(st.lists(st.sampled_from(verts), max_size=5))
        assert tsp.solve_tree(tsp.TspInstance(F2, a, pts, b)).value == F2.distance(a, b)

    def test_dp_tie_break_is_lexicographic(self):
        L = IntegerLattice(1)
        I = tsp.TspInstance(L, (0,), [(1,), (-1,)], (0,))
        sol = tsp.solve_dp(I)
        assert sol.value == 4
        assert sol.order == (I.points[0], I.points[1])


class TestPolicy:
    def test_tree_base_uses_closed_form(self):
        pts = [(i,) for i in range(-30, 30, 2)]
        sol = tsp.solve(tsp.TspInstance(IntegerLattice(1), (0,), pts, (5,)))
        assert sol.solver == "tree" and sol.value == 2 * 58 - 5

    def test_cap(self):
        L = IntegerLattice(2)
        pts = [(i, j) for i in range(5) for j in range(5)]
        I = tsp.TspInstance(L, (0, 0), pts, (0, 0))
        with pytest.raises(ResourceGuardError):
            tsp.solve(I)
        sol = tsp.solve(I, approximate=True)
        assert not sol.exact and sol.solver == "approx"
        assert sol.value == I.path_length(sol.order)
        with pytest.raises(ResourceGuardError):
            tsp.brute_force(tsp.TspInstance(L, (0, 0), pts[:10], (0, 0)))

    def test_tree_solver_rejects_lattice2(self):
        with pytest.raises(TypeError):
            tsp.solve_tree(tsp.TspInstance(IntegerLattice(2), (0, 0), [], (1, 1)))
