import math

import numpy as np
import pytest

from edgeoverlap import (Family, GeneratorSpec, generate,
                         generate_directed_er, generate_er, generate_wrg)
from edgeoverlap.errors import ConfigError
import edgeoverlap.generators as gen_module


class TestDeterminism:
    @pytest.mark.parametrize("factory,p", [
        (generate_er, 0.1), (generate_wrg, 0.25), (generate_directed_er, 0.08)])
    def test_same_seed_same_graph(self, factory, p):
        assert factory(400, p, 2024) == factory(400, p, 2024)

    def test_different_seeds_differ(self):
        assert generate_er(200, 0.1, 1) != generate_er(200, 0.1, 2)

    def test_families_use_distinct_streams(self):
        er = generate_er(100, 0.2, 5)
        wrg = generate_wrg(100, 0.2, 5)
        assert not (np.array_equal(er.src, wrg.src)
                    and np.array_equal(er.dst, wrg.dst))

    @pytest.mark.parametrize("chunk", [4, 28, 1 << 10])
    def test_chunk_partitioning_does_not_change_output(self, chunk):
        baseline = generate_er(150, 0.3, 77)
        old = gen_module._CHUNK
        try:
            gen_module._CHUNK = chunk
            assert generate_er(150, 0.3, 77) == baseline
            w_old = generate_wrg(150, 0.3, 77)
        finally:
            gen_module._CHUNK = old
        assert w_old == generate_wrg(150, 0.3, 77)

    def test_sparse_path_deterministic(self):
        a = generate_er(3000, 0.001, 9)
        b = generate_er(3000, 0.001, 9)
        assert a == b and a.num_edges > 0


class TestUnranking:
    @pytest.mark.parametrize("n", [2, 3, 4, 11, 60, 101])
    def test_triangular_unrank_exhaustive(self, n):
        total = n * (n - 1) // 2
        i, j = gen_module._triu_unrank(np.arange(total), n)
        expect = [(a, b) for a in range(n) for b in range(a + 1, n)]
        assert list(zip(i.tolist(), j.tolist())) == expect

    @pytest.mark.parametrize("n", [2, 3, 7, 40])
    def test_pair_unrank_exhaustive(self, n):
        total = n * (n - 1)
        i, j = gen_module._pair_unrank(np.arange(total), n)
        expect = [(a, b) for a in range(n) for b in range(n) if b != a]
        assert list(zip(i.tolist(), j.tolist())) == expect


class TestEdgeCases:
    def test_p_zero_graphs_are_empty(self):
        assert generate_er(50, 0.0, 1).num_edges == 0
        assert generate_wrg(50, 0.0, 1).num_edges == 0
        assert generate_directed_er(50, 0.0, 1).num_arcs == 0

    def test_single_node(self):
        assert generate_er(1, 0.5, 1).num_edges == 0

    @pytest.mark.parametrize("n,p", [(0, 0.5), (10, 1.0), (10, -0.2)])
    def test_invalid_parameters(self, n, p):
        with pytest.raises(ConfigError):
            generate_er(n, p, 1)

    def test_spec_dispatch(self):
        spec = GeneratorSpec(family=Family.WRG, n=60, p=0.3, seed=4)
        assert generate(spec) == generate_wrg(60, 0.3, 4)


class TestDistributions:
    """Statistical checks at fixed seeds, 4-sigma tolerance."""

    def test_er_edge_count(self):
        g = generate_er(1000, 0.1, 31)
        dyads = 1000 * 999 / 2
        sigma = math.sqrt(dyads * 0.1 * 0.9)
        assert abs(g.num_edges - dyads * 0.1) <= 4 * sigma

    def test_er_degree_distribution_moments(self):
        g = generate_er(2000, 0.05, 8)
        k = g.degrees
        mean_expect = 1999 * 0.05
        var_expect = 1999 * 0.05 * 0.95
        assert abs(k.mean() - mean_expect) <= 4 * math.sqrt(var_expect / 2000)
        assert abs(k.var() - var_expect) <= 0.2 * var_expect

    def test_wrg_mean_weight_over_dyads(self):
        n, p = 500, 0.4
        g = generate_wrg(n, p, 12)
        dyads = n * (n - 1) / 2
        wbar = g.total_weight / dyads
        sigma = math.sqrt(p / (1 - p) ** 2 / dyads)
        assert abs(wbar - p / (1 - p)) <= 4 * sigma

    def test_wrg_weights_positive_and_geometric(self):
        g = generate_wrg(500, 0.4, 3)
        assert g.weights.min() >= 1
        # P(weight = 1 | edge) = 1 - p
        share = (g.weights == 1).mean()
        sigma = math.sqrt(0.4 * 0.6 / g.num_edges)
        assert abs(share - 0.6) <= 4 * sigma

    def test_wrg_strength_mean(self):
        n, p = 800, 0.2
        g = generate_wrg(n, p, 99)
        expect = (n - 1) * p / (1 - p)
        dyads = n * (n - 1) / 2
        sigma_total = math.sqrt(dyads * p / (1 - p) ** 2)
        sigma_mean_strength = 2 * sigma_total / n
        assert abs(g.strengths.mean() - expect) <= 4 * sigma_mean_strength

    def test_directed_reciprocation(self):
        n, p = 500, 0.1
        g = generate_directed_er(n, p, 17)
        arcs = set(zip(g.src.tolist(), g.dst.tolist()))
        recip = sum((b, a) in arcs for a, b in arcs) / 2
        dyads = n * (n - 1) / 2
        sigma = math.sqrt(dyads * p * p * (1 - p * p))
        assert abs(recip - dyads * p * p) <= 4 * sigma

    def test_directed_in_out_means(self):
        n, p = 500, 0.1
        g = generate_directed_er(n, p, 23)
        total = n * (n - 1)
        sigma_mean = math.sqrt(total * p * (1 - p)) / n
        assert abs(g.in_degrees.mean() - (n - 1) * p) <= 4 * sigma_mean
        assert abs(g.out_degrees.mean() - (n - 1) * p) <= 4 * sigma_mean

    def test_sparse_path_edge_count(self):
        n, p = 4000, 0.002
        g = generate_er(n, p, 6)
        dyads = n * (n - 1) / 2
        sigma = math.sqrt(dyads * p * (1 - p))
        assert abs(g.num_edges - dyads * p) <= 4 * sigma

    def test_sparse_wrg_weights(self):
        g = generate_wrg(3000, 0.004, 2)
        assert g.num_edges > 0
        assert g.weights.min() >= 1
        share = (g.weights == 1).mean()
        sigma = math.sqrt(0.004 * 0.996 / g.num_edges)
        assert abs(share - 0.996) <= 4 * sigma

    def test_canonical_edge_order(self):
        g = generate_er(300, 0.1, 44)
        key = g.src * g.n + g.dst
        assert (np.diff(key) > 0).all()
        assert (g.src < g.dst).all()
        d = generate_directed_er(300, 0.1, 44)
        key = d.src * d.n + d.dst
        assert (np.diff(key) > 0).all()
