import numpy as np
import pytest

from absorbclust.approx import (absorption_rank1, absorption_series, compare,
                                iter_absorption_series, largest_gap_position, spectrum_profile)
from absorbclust.markov import absorbing_chain, absorption_exact
from absorbclust.spectral import DirichletFiedler, dirichlet_fiedler_exact


class TestSeries:
    def test_path_hand_iteration(self, path3):
        ch = absorbing_chain(path3, 2)
        expected = {0: [1, 1], 1: [2, 1.5], 2: [2.5, 2]}
        for t, want in expected.items():
            np.testing.assert_allclose(absorption_series(ch, t).partial, want)

    def test_iterator_agrees(self, karate):
        ch = absorbing_chain(karate[0], 3)
        sums = dict(iter_absorption_series(ch, 12))
        np.testing.assert_allclose(sums[12], absorption_series(ch, 12).partial)

    def test_star_all_ones(self, star):
        ch = absorbing_chain(star, 0)
        for t in (0, 1, 5):
            np.testing.assert_array_equal(absorption_series(ch, t).partial, 1)

    def test_negative_cutoff(self, path3):
        with pytest.raises(ValueError):
            absorption_series(absorbing_chain(path3, 2), -1)

    def test_monotone_and_bounded(self, experiment_graphs):
        for g in experiment_graphs.values():
            ch = absorbing_chain(g, g.n - 1)
            exact = absorption_exact(ch).m
            prev = None
            for _, s in iter_absorption_series(ch, 200):
                if prev is not None:
                    assert np.all(s >= prev)
                assert np.all(s <= exact + 1e-9)
                prev = s

    def test_converges_within_1e6(self, experiment_graphs):
        for g in experiment_graphs.values():
            ch = absorbing_chain(g, 0)
            exact = absorption_exact(ch).m
            first = next((t for t, s in iter_absorption_series(ch, 10_000)
                          if np.max(np.abs(s - exact)) <= 1e-6), None)
            assert first is not None


class TestRank1:
    def test_k4_exact(self, k4):
        df = dirichlet_fiedler_exact(k4, 3)
        est = absorption_rank1(df, k4.degrees)
        np.testing.assert_allclose(est.estimate, 3, atol=1e-12)

    def test_star_ones(self, star):
        est = absorption_rank1(dirichlet_fiedler_exact(star, 0), star.degrees)
        np.testing.assert_allclose(est.estimate, 1)

    def test_caveman_correlation(self, caveman):
        for seed in (0, 7, 29):
            ch = absorbing_chain(caveman, seed)
            est = absorption_rank1(dirichlet_fiedler_exact(caveman, seed), caveman.degrees)
            assert compare(absorption_exact(ch), est.estimate).pearson >= 0.99

    def test_non_absorbing_rejected(self):
        df = DirichletFiedler(0, 1.0, np.ones(2), np.ones(2) / np.sqrt(2), np.array([1, 2]))
        with pytest.raises(ValueError):
            absorption_rank1(df, np.ones(3))

    def test_component_form(self, karate):
        g = karate[0]
        df = dirichlet_fiedler_exact(g, 10)
        est = absorption_rank1(df, g.degrees)
        np.testing.assert_allclose(est.estimate, 1 + est.c_prime * df.v)
        assert np.all(est.estimate >= 1 - 1e-10)

    def test_rank_one_ratios(self, gnp7):
        df = dirichlet_fiedler_exact(gnp7, 42)
        e = absorption_rank1(df, gnp7.degrees).estimate - 1
        ratio_est = e[:, None] / e[None, :]
        ratio_v = df.v[:, None] / df.v[None, :]
        np.testing.assert_allclose(ratio_est, ratio_v, atol=1e-8)

    @pytest.mark.parametrize("name", ["caveman", "karate", "gnp"])
    def test_correlation_floor_every_seed(self, experiment_graphs, name):
        g = experiment_graphs[name]
        for seed in range(g.n):
            ch = absorbing_chain(g, seed)
            est = absorption_rank1(dirichlet_fiedler_exact(g, seed), g.degrees)
            assert compare(absorption_exact(ch), est.estimate).pearson >= 0.99, seed


class TestCompare:
    def test_identical(self):
        rep = compare([1, 2, 3], [1, 2, 3])
        assert rep.pearson == pytest.approx(1) and rep.sse_per_vertex == 0

    def test_scaled(self):
        rep = compare([1, 2, 4], [2, 4, 8])
        assert rep.pearson == pytest.approx(1)
        assert rep.sse_per_vertex == pytest.approx(21 / 3)
        assert rep.max_abs_diff == 4

    def test_constant_flagged(self):
        rep = compare([3, 3, 3], [1, 2, 3])
        assert rep.constant_exact and np.isnan(rep.pearson)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            compare([1, 2], [1, 2, 3])

    def test_karate_seed(self, karate):
        g = karate[0]
        ch = absorbing_chain(g, 33)
        est = absorption_rank1(dirichlet_fiedler_exact(g, 33), g.degrees)
        assert compare(absorption_exact(ch), est.estimate).pearson >= 0.99


class TestSpectrumProfile:
    def test_k4(self, k4):
        np.testing.assert_allclose(spectrum_profile(absorbing_chain(k4, 3)),
                                   [1, 2 / 3, -1 / 3, -1 / 3], atol=1e-12)

    def test_edge(self, edge):
        np.testing.assert_allclose(spectrum_profile(absorbing_chain(edge, 1)), [1, 0],
                                   atol=1e-12)

    def test_caveman_gap(self, caveman):
        # counting the unit eigenvalue as lambda_0, the largest gap in the top ten
        # sits between lambda_6 and lambda_7
        for seed in range(caveman.n):
            vals = spectrum_profile(absorbing_chain(caveman, seed))
            assert largest_gap_position(vals, 10) == 7
