import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plumbhf import (
    GraphStructureError,
    brieskorn_graph,
    determinant_exact,
    definiteness,
    eval_cont_frac,
    euler_number,
    intersection_form,
    neg_cont_frac,
    normalized_seifert,
    star_data,
)
from helpers import build_graph, chain_graph, coprime_triple, star_graph


class TestNegContFrac:
    def test_known_expansions(self):
        assert neg_cont_frac(13, 2) == [7, 2]
        assert neg_cont_frac(7, 2) == [4, 2]
        assert neg_cont_frac(5, 2) == [3, 2]
        assert neg_cont_frac(3, 2) == [2, 2]
        assert neg_cont_frac(5, 4) == [2, 2, 2, 2]
        assert neg_cont_frac(7, 1) == [7]

    def test_entries_at_least_two(self):
        for p, q in [(17, 5), (29, 12), (101, 37)]:
            assert all(e >= 2 for e in neg_cont_frac(p, q))

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            neg_cont_frac(2, 3)
        with pytest.raises(ValueError):
            neg_cont_frac(4, 2)
        with pytest.raises(ValueError):
            neg_cont_frac(5, 0)

    def test_eval_rejects_empty(self):
        with pytest.raises(ValueError):
            eval_cont_frac([])


@st.composite
def coprime_pair(draw):
    p = draw(st.integers(2, 400))
    q = draw(st.integers(1, p - 1))
    g = math.gcd(p, q)
    return p // g, q // g


class TestContFracRoundTrip:
    """Criterion suite: continued fraction round trips, 120+ cases."""

    @given(coprime_pair())
    def test_expand_then_eval(self, pq):
        p, q = pq
        entries = neg_cont_frac(p, q)
        assert all(e >= 2 for e in entries)
        assert eval_cont_frac(entries) == Fraction(p, q)

    @given(st.lists(st.integers(2, 9), min_size=1, max_size=7))
    def test_eval_then_expand(self, entries):
        f = eval_cont_frac(entries)
        assert neg_cont_frac(f.numerator, f.denominator) == entries


class TestNormalizedSeifert:
    def test_fixture_invariants(self):
        sd = normalized_seifert(2, 3, 13)
        assert sd.e0 == -1 and sd.legs == ((2, 1), (3, 1), (13, 2))
        sd = normalized_seifert(2, 5, 7)
        assert sd.e0 == -1 and sd.legs == ((2, 1), (5, 1), (7, 2))
        sd = normalized_seifert(3, 4, 5)
        assert sd.e0 == -1 and sd.legs == ((3, 1), (4, 1), (5, 2))
        sd = normalized_seifert(2, 3, 5)
        assert sd.e0 == -2 and sd.legs == ((2, 1), (3, 2), (5, 4))
        sd = normalized_seifert(2, 3, 7)
        assert sd.e0 == -1 and sd.legs == ((2, 1), (3, 1), (7, 1))

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError, match="coprime"):
            normalized_seifert(4, 6, 9)

    def test_rejects_small_multiplicity(self):
        with pytest.raises(ValueError):
            normalized_seifert(1, 2, 3)

    def test_normalization_identity(self):
        # e0 * A + sum of b * (A / a) must equal -1 for a homology sphere
        rng = random.Random(404)
        for _ in range(30):
            a1, a2, a3 = coprime_triple(rng)
            sd = normalized_seifert(a1, a2, a3)
            A = a1 * a2 * a3
            total = sd.e0 * A + sum(b * (A // a) for a, b in sd.legs)
            assert total == -1


class TestBrieskornGraph:
    def test_figure_arms_2_3_13(self):
        g = brieskorn_graph(2, 3, 13)
        center, arms = star_data(g, 0)
        assert g.weight_of(center) == -1
        assert [a.weights for a in arms] == [(-2,), (-3,), (-7, -2)]

    def test_figure_arms_2_5_7(self):
        g = brieskorn_graph(2, 5, 7)
        center, arms = star_data(g, 0)
        assert g.weight_of(center) == -1
        assert [a.weights for a in arms] == [(-2,), (-5,), (-4, -2)]

    def test_figure_arms_3_4_5(self):
        g = brieskorn_graph(3, 4, 5)
        center, arms = star_data(g, 0)
        assert g.weight_of(center) == -1
        assert [a.weights for a in arms] == [(-3,), (-4,), (-3, -2)]

    def test_poincare_sphere_is_e8(self):
        g = brieskorn_graph(2, 3, 5)
        assert g.n == 8
        assert all(w == -2 for _, w in g.vertices)
        _, arms = star_data(g, 0)
        assert sorted(len(a.weights) for a in arms) == [1, 2, 4]

    def test_arm_multiplicities_recover_input(self):
        g = brieskorn_graph(2, 3, 13)
        _, arms = star_data(g, 0)
        assert [a.multiplicity for a in arms] == [(2, 1), (3, 1), (13, 2)]


class TestStarData:
    def test_rejects_double_star(self):
        g = build_graph(
            [-2, -2, -2, -2, -2, -2, -3, -3],
            [(6, 0), (6, 1), (6, 2), (6, 7), (7, 3), (7, 4), (7, 5)],
        )
        with pytest.raises(GraphStructureError, match="multiple vertices"):
            star_data(g)

    def test_chain_uses_min_endpoint(self):
        g = chain_graph([-2, -3, -4])
        center, arms = star_data(g)
        assert center == 0
        assert [a.weights for a in arms] == [(-3, -4)]

    def test_explicit_center_on_chain(self):
        g = chain_graph([-2, -3, -4])
        center, arms = star_data(g, 1)
        assert center == 1
        assert sorted(a.weights for a in arms) == [(-4,), (-2,)]


class TestEulerNumberProperties:
    """Criterion suite: Euler number -1/(a1 a2 a3), unimodular, definite."""

    def test_random_triples(self):
        rng = random.Random(405)
        for _ in range(120):
            a1, a2, a3 = coprime_triple(rng)
            g = brieskorn_graph(a1, a2, a3)
            assert euler_number(g, 0) == Fraction(-1, a1 * a2 * a3)
            m = intersection_form(g)
            assert abs(determinant_exact(m)) == 1
            assert definiteness(m) == "negative_definite"

    def test_e8_euler_number(self):
        assert euler_number(brieskorn_graph(2, 3, 5), 0) == Fraction(-1, 30)

    def test_euler_number_without_center_hint(self):
        assert euler_number(brieskorn_graph(2, 3, 7)) == Fraction(-1, 42)
