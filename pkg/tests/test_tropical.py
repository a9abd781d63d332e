from fractions import Fraction

import pytest

from tropmarkov.dynamics.errors import DomainError, NotOnSurface
from tropmarkov.dynamics.sampling import make_rng, random_surface_points, random_trop_points
from tropmarkov.dynamics.tropical import (
    TropPoint3,
    apply_markov_word,
    apply_word,
    f,
    f_closed,
    on_surface,
    phi,
    project_uv,
    psi,
    rho,
    sigma,
    trop_markov_step,
    vertices,
)
from tropmarkov.dynamics.words import GeneratorWord


class TestTropPoint3:
    def test_ints_become_fractions(self):
        p = TropPoint3(1, 2, 3)
        assert p.is_exact
        assert isinstance(p.u, Fraction)

    def test_floats_stay_floats(self):
        assert not TropPoint3(0.5, 0.0, 1.5).is_exact

    def test_markov_names(self):
        p = TropPoint3(1, 2, 3)
        assert (p.X, p.Y, p.Z) == (1, 2, 3)

    def test_distance_is_max_norm(self):
        assert TropPoint3(0, 0, 0).distance(TropPoint3(1, -3, 2)) == 3


class TestPiecewiseFunction:
    @pytest.mark.parametrize(
        "u,v,expected",
        [(2, 1, 1), (1, 2, 1), (-2, 1, -1), (1, -2, -1), (0, 0, 0), (3, 3, 3), (-3, -3, 3)],
    )
    def test_case_table(self, u, v, expected):
        assert f(u, v) == expected

    def test_closed_form_agrees(self):
        for p in random_trop_points(make_rng(3), 500):
            assert f(p.u, p.v) == f_closed(p.u, p.v)

    def test_cases_agree_on_boundaries(self):
        quarters = [Fraction(k, 4) for k in range(-12, 13)]
        for u in quarters:
            for v in quarters:
                matching = [
                    value
                    for holds, value in (
                        (u >= abs(v), v),
                        (v >= abs(u), u),
                        (-u >= abs(v), -v),
                        (-v >= abs(u), -u),
                    )
                    if holds
                ]
                assert matching, (u, v)
                assert set(matching) == {f(u, v)}, (u, v)


class TestTropicalMarkov:
    def test_step(self):
        assert trop_markov_step(TropPoint3(1, 2, 5)) == TropPoint3(1, 2, -1)

    def test_phi_invariance(self):
        p = TropPoint3(1, 2, 5)
        assert phi(p) == 2
        assert phi(trop_markov_step(p)) == 2

    def test_step_is_involution(self):
        for p in random_trop_points(make_rng(4), 200):
            assert trop_markov_step(trop_markov_step(p)) == p
            assert phi(trop_markov_step(p)) == phi(p)

    def test_markov_word(self):
        p = TropPoint3(Fraction(1, 3), 2, -1)
        assert apply_markov_word(p, GeneratorWord("ss")) == p
        assert apply_markov_word(p, GeneratorWord("rrr")) == p


class TestCayleyAction:
    def test_sigma_example(self):
        assert sigma(TropPoint3(1, 0, 1)) == TropPoint3(1, 0, -1)

    def test_rho_example(self):
        assert rho(TropPoint3(1, 2, 3)) == TropPoint3(2, 3, 1)

    def test_involutions_and_invariance(self):
        for p in random_trop_points(make_rng(7), 1000):
            assert sigma(sigma(p)) == p
            assert rho(rho(rho(p))) == p
            assert psi(sigma(p)) == psi(p)
            assert psi(rho(p)) == psi(p)

    def test_psi_positively_homogeneous(self):
        for p in random_trop_points(make_rng(11), 200):
            for factor in (Fraction(1, 3), Fraction(2), Fraction(7, 2)):
                assert psi(p.scaled(factor)) == factor * psi(p)

    def test_apply_word_left_to_right(self):
        p = TropPoint3(Fraction(1, 2), Fraction(-1, 4), 1)
        assert apply_word(p, GeneratorWord("sr")) == rho(sigma(p))
        assert apply_word(p, GeneratorWord("")) == p


class TestSurface:
    def test_vertices_on_surface(self):
        vs = vertices()
        assert len(vs) == 4
        assert all(on_surface(v) for v in vs)

    def test_vertices_permuted_by_generators(self):
        vs = set(vertices())
        assert {rho(v) for v in vs} == vs
        assert {sigma(v) for v in vs} == vs

    def test_scaled_level(self):
        assert all(on_surface(v, Fraction(3)) for v in vertices(Fraction(3)))

    def test_level_must_be_positive(self):
        with pytest.raises(DomainError):
            on_surface(TropPoint3(0, 0, 0), 0)

    def test_generators_preserve_surface(self):
        for p in random_surface_points(make_rng(5), 300):
            assert on_surface(p)
            assert on_surface(sigma(p))
            assert on_surface(rho(p))


class TestProjection:
    def test_sigma_swaps_sheets(self):
        p = TropPoint3(1, 0, 1)
        assert project_uv(p).branch == 1
        assert project_uv(sigma(p)).branch == -1

    def test_fold_edge_has_positive_branch(self):
        # w = f(u, v): fixed by sigma
        p = TropPoint3(2, 0, 0)
        assert sigma(p) == p
        assert project_uv(p).branch == 1

    def test_off_surface(self):
        with pytest.raises(NotOnSurface):
            project_uv(TropPoint3(0, 0, 0))
