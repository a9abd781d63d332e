import math

import pytest

from tropmarkov.dynamics.classical import (
    EuclidTriple,
    MarkovTriple,
    RealTriple,
    cos_param,
    cosh_param,
    euclid_path,
    gram_det,
    in_spectrahedron,
    is_cayley,
    is_markov,
    loglog_growth,
    markov_integral,
    markov_numbers,
    markov_path,
    tree_level,
    tropical_gap,
    vieta_markov,
    vieta_ratio,
)
from tropmarkov.dynamics.errors import DepthExceeded, DomainError, NotDivisible
from tropmarkov.dynamics.sampling import make_rng, random_path_words
from tropmarkov.dynamics.words import PathWord


class TestMarkovEquation:
    @pytest.mark.parametrize("triple", [(1, 1, 1), (1, 1, 2), (1, 2, 5), (2, 5, 29), (1, 89, 233)])
    def test_known_triples(self, triple):
        assert is_markov(MarkovTriple(*triple))

    def test_off_equation(self):
        assert not is_markov(MarkovTriple(1, 2, 3))

    def test_entries_must_be_positive(self):
        with pytest.raises(DomainError):
            MarkovTriple(0, 1, 1)

    def test_integral_is_three_on_equation(self):
        assert markov_integral(MarkovTriple(2, 5, 29)) == 3

    def test_json_keeps_big_entries(self):
        t = MarkovTriple(1, 2, 10 ** 40)
        assert t.to_json() == ["1", "2", str(10 ** 40)]
        assert MarkovTriple.from_json(t.to_json()) == t


class TestVieta:
    def test_move_on_largest(self):
        assert vieta_markov(MarkovTriple(1, 2, 5), 3) == MarkovTriple(1, 2, 1)

    def test_involution(self):
        t = MarkovTriple(5, 13, 194)
        for slot in (1, 2, 3):
            assert vieta_markov(vieta_markov(t, slot), slot) == t

    def test_ratio_form_matches(self):
        t = MarkovTriple(2, 29, 169)
        for slot in (1, 2, 3):
            assert vieta_ratio(t, slot) == vieta_markov(t, slot)

    def test_ratio_form_detects_off_equation(self):
        with pytest.raises(NotDivisible):
            vieta_ratio(MarkovTriple(1, 2, 3), 3)

    def test_bad_slot(self):
        with pytest.raises(DomainError):
            vieta_markov(MarkovTriple(1, 1, 2), 4)


class TestTreePaths:
    def test_empty_word_is_root(self):
        assert markov_path(PathWord("")) == [MarkovTriple(1, 1, 2)]
        assert euclid_path(PathWord("")) == [EuclidTriple(1, 1, 2)]

    def test_left_boundary_is_fibonacci(self):
        path = markov_path(PathWord("LLLLL"))
        assert [t.as_tuple() for t in path] == [
            (1, 1, 2), (1, 2, 5), (1, 5, 13), (1, 13, 34), (1, 34, 89), (1, 89, 233),
        ]

    def test_turning_right(self):
        assert markov_path(PathWord("LR"))[-1] == MarkovTriple(2, 5, 29)

    def test_first_letter_is_symmetric(self):
        assert markov_path(PathWord("L")) == markov_path(PathWord("R"))

    def test_depth_cap(self):
        with pytest.raises(DepthExceeded):
            markov_path(PathWord("L" * 31))

    def test_random_paths_stay_on_equation(self):
        for w in random_path_words(make_rng(11), 200, 20):
            assert all(is_markov(t) for t in markov_path(w))
            assert all(e.is_valid() for e in euclid_path(w))

    def test_euclid_alternating_word_gives_fibonacci(self):
        path = euclid_path(PathWord.alternating(10))
        assert [e.largest for e in path] == [2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]

    def test_euclid_constant_word_grows_linearly(self):
        path = euclid_path(PathWord("RRRRRR"))
        assert [e.largest for e in path] == [k + 2 for k in range(7)]

    def test_euclid_first_step(self):
        assert euclid_path(PathWord("L"))[-1] == EuclidTriple(1, 2, 3)


class TestTreeLevels:
    def test_first_level(self):
        assert tree_level(1) == [MarkovTriple(1, 1, 2), MarkovTriple(1, 2, 5)]

    def test_small_markov_numbers(self):
        assert markov_numbers(5)[:10] == [1, 2, 5, 13, 29, 34, 89, 169, 194, 233]

    def test_level_triples_are_markov(self):
        assert all(is_markov(t) for t in tree_level(8))


class TestGrowth:
    def test_loglog_single_triple(self):
        assert loglog_growth([MarkovTriple(1, 2, 5)]) == [pytest.approx(math.log(math.log(5)))]

    def test_loglog_rejects_small_entries(self):
        with pytest.raises(DomainError):
            loglog_growth([MarkovTriple(1, 1, 2)])

    def test_tropical_gap_starts_at_root(self):
        gaps = tropical_gap(PathWord("LRLR"))
        assert len(gaps) == 5
        assert gaps[0] == pytest.approx(math.log(2) / 2)


class TestCayleyCubic:
    @pytest.mark.parametrize("a,b", [(0.3, 0.7), (1.1, -0.4), (2.0, 2.5)])
    def test_cosh_sheet(self, a, b):
        assert is_cayley(cosh_param(a, b), 1e-9)

    @pytest.mark.parametrize("a,b", [(0.3, 0.7), (1.1, -0.4), (2.0, 2.5)])
    def test_cos_sheet(self, a, b):
        t = cos_param(a, b)
        assert is_cayley(t, 1e-12)
        assert gram_det(t) == pytest.approx(0.0, abs=1e-12)
        assert in_spectrahedron(t)

    def test_cosh_sheet_gram_det(self):
        rng = make_rng(17)
        for a, b in rng.uniform(-5.0, 5.0, size=(500, 2)):
            assert abs(gram_det(cosh_param(float(a), float(b)))) <= 1e-6

    def test_negative_tolerance(self):
        with pytest.raises(DomainError):
            is_cayley(RealTriple(2.0, 2.0, 2.0), -1.0)

    def test_spectrahedron_membership(self):
        assert in_spectrahedron(RealTriple(0.0, 0.0, 0.0))
        assert not in_spectrahedron(RealTriple(3.0, 3.0, 3.0))

    def test_gram_det_grid(self):
        steps = [2.0 * math.pi * k / 40 for k in range(40)]
        worst = max(abs(gram_det(cos_param(a, b))) for a in steps for b in steps)
        assert worst <= 1e-9
