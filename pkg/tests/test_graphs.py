import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgeoverlap import (EmptyInputError, MultiplexEdgeList, ParseError,
                         UndirectedGraph, WeightedGraph, load_attributes,
                         load_edge_list, write_edge_list)
from edgeoverlap.errors import ConfigError


def load(text, **kw):
    return load_edge_list(io.StringIO(text), **kw)


class TestLoading:
    def test_self_loop_stripping(self):
        g = load("0,1\n1,2\n2,2")
        assert g.n == 3
        assert g.num_edges == 2
        assert g.self_loops_dropped == 1
        assert g.has_edge(0, 1) and g.has_edge(1, 2) and not g.has_edge(0, 2)

    def test_duplicate_weighted_edges_sum(self):
        g = load("0,1,2\n0,1,3", weighted=True)
        assert g.num_edges == 1
        assert g.edge_weight(0, 1) == 5

    def test_both_side_reports_are_one_edge(self):
        g = load("0,1\n1,0\n1,2")
        assert g.num_edges == 2

    def test_directed_duplicate_arcs_collapse(self):
        g = load("0,1\n0,1\n1,0", directed=True)
        assert g.num_arcs == 2
        assert g.has_arc(0, 1) and g.has_arc(1, 0)

    def test_header_and_comments(self):
        g = load("# a comment\nsrc,dst\n0,1\n# another\n1,2\n")
        assert g.num_edges == 2

    def test_declared_n_comment(self):
        g = load("# n=10\n0,1\n")
        assert g.n == 10
        assert g.degree(9) == 0

    def test_explicit_n_argument(self):
        g = load("0,1\n", n=7)
        assert g.n == 7

    def test_layered_village_style(self):
        rows = ["src,dst,layer"]
        for layer in range(1, 13):
            rows.append(f"0,{layer},{layer}")
            rows.append(f"1,{layer + 1},{layer}")
        m = load("\n".join(rows), layered=True)
        assert isinstance(m, MultiplexEdgeList)
        assert len(m.layers) == 12
        graphs = dict(m.layer_graphs())
        assert all(g.n == m.n for g in graphs.values())
        assert graphs["3"].has_edge(0, 3)

    def test_remap_sparse_ids(self):
        g = load("100,200\n200,305\n", remap=True)
        assert g.n == 3
        assert list(g.id_map) == [100, 200, 305]
        assert g.has_edge(0, 1) and g.has_edge(1, 2)

    def test_self_loop_only_node_counts_toward_n(self):
        g = load("0,1\n5,5\n")
        assert g.n == 6
        assert g.num_edges == 1


class TestParseErrors:
    def test_wrong_arity_reports_line(self):
        with pytest.raises(ParseError, match="line 3"):
            load("src,dst\n0,1\n0,1,2\n")

    def test_non_integer_id(self):
        with pytest.raises(ParseError, match="not an integer"):
            load("0,x\n")

    def test_negative_id(self):
        with pytest.raises(ParseError, match="non-negative"):
            load("0,-1\n")

    def test_zero_weight(self):
        with pytest.raises(ParseError, match="positive"):
            load("src,dst,weight\n0,1,0\n", weighted=True)

    def test_real_valued_weight_rejected(self):
        with pytest.raises(ParseError, match="not an integer"):
            load("src,dst,weight\n0,1,1.5\n", weighted=True)

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            load("# nothing\n")

    def test_id_beyond_declared_n(self):
        with pytest.raises(ParseError, match="exceeds declared n"):
            load("0,1\n0,9\n", n=5)

    def test_missing_weight_column(self):
        with pytest.raises(ParseError, match="weight column"):
            load("src,dst\n0,1\n", weighted=True)

    def test_directed_weighted_rejected(self):
        with pytest.raises(ConfigError):
            load("0,1\n", directed=True, weighted=True)

    def test_empty_layer_label(self):
        with pytest.raises(ParseError, match="layer"):
            load("src,dst,layer\n0,1,\n", layered=True)


class TestDegrees:
    def test_triangle_degree(self):
        g = load("0,1\n1,2\n2,0\n")
        assert g.degree(0) == 2

    def test_weighted_path_strength(self):
        g = load("src,dst,weight\n0,1,2\n1,2,3\n", weighted=True)
        assert g.strength(1) == 5
        assert g.strength(0) == 2
        assert g.degree(1) == 2

    def test_directed_cycle_in_out(self):
        g = load("0,1\n1,2\n2,0\n", directed=True)
        assert g.in_degree(0) == 1
        assert g.out_degree(0) == 1

    @pytest.mark.parametrize("method", ["degree", "neighbors"])
    def test_out_of_range_raises_index_error(self, method):
        g = load("0,1\n")
        with pytest.raises(IndexError):
            getattr(g, method)(2)

    def test_directed_out_of_range(self):
        g = load("0,1\n", directed=True)
        with pytest.raises(IndexError):
            g.in_degree(5)


@st.composite
def edge_sets(draw):
    n = draw(st.integers(min_value=2, max_value=25))
    m = draw(st.integers(min_value=0, max_value=40))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = draw(st.lists(pairs, min_size=m, max_size=m))
    return n, edges


class TestInvariants:
    @given(edge_sets())
    @settings(max_examples=150, deadline=None)
    def test_handshake_and_symmetry(self, data):
        n, edges = data
        src = [a for a, _ in edges]
        dst = [b for _, b in edges]
        g = UndirectedGraph.from_edges(src, dst, n=n)
        assert int(g.degrees.sum()) == 2 * g.num_edges
        for i in range(n):
            for j in g.neighbors(i):
                assert i in g.neighbors(int(j))

    @given(edge_sets())
    @settings(max_examples=100, deadline=None)
    def test_weighted_handshake(self, data):
        n, edges = data
        src = [a for a, _ in edges]
        dst = [b for _, b in edges]
        w = [1 + (a + b) % 5 for a, b in edges]
        g = WeightedGraph.from_edges(src, dst, w, n=n)
        assert int(g.strengths.sum()) == 2 * g.total_weight
        assert (g.strengths >= g.degrees).all()

    def test_round_trip_undirected(self):
        g = load("0,1\n1,2\n0,4\n", n=6)
        buf = io.StringIO()
        write_edge_list(g, buf)
        again = load(buf.getvalue())
        assert again == g
        assert again.n == 6

    def test_round_trip_weighted(self):
        g = load("src,dst,weight\n0,1,2\n1,2,7\n", weighted=True)
        buf = io.StringIO()
        write_edge_list(g, buf)
        assert load(buf.getvalue(), weighted=True) == g

    def test_round_trip_directed(self):
        g = load("0,1\n1,0\n2,0\n", directed=True)
        buf = io.StringIO()
        write_edge_list(g, buf)
        assert load(buf.getvalue(), directed=True) == g

    def test_round_trip_multiplex(self):
        m = load("src,dst,layer\n0,1,a\n1,2,a\n0,1,b\n2,1,a\n", layered=True)
        buf = io.StringIO()
        write_edge_list(m, buf)
        again = load(buf.getvalue(), layered=True)
        assert again == m

    def test_round_trip_remapped_keeps_original_ids(self):
        g = load("10,20\n20,33\n", remap=True)
        buf = io.StringIO()
        write_edge_list(g, buf)
        assert "10,20" in buf.getvalue()
        again = load(buf.getvalue(), remap=True)
        assert again == g
        assert list(again.id_map) == [10, 20, 33]

    def test_serialization_is_sorted(self):
        g = UndirectedGraph.from_edges([5, 0, 2], [3, 1, 1], n=6)
        buf = io.StringIO()
        write_edge_list(g, buf)
        data_rows = [r for r in buf.getvalue().splitlines()
                     if r and not r.startswith(("#", "src"))]
        assert data_rows == sorted(data_rows, key=lambda r: tuple(map(int, r.split(","))))


class TestAttributes:
    def test_load_with_missing_fields(self):
        text = "node_id,sex,caste,age\n0,F,OBC,30\n1,M,,\n2,,,41\n"
        attrs = load_attributes(io.StringIO(text))
        assert attrs.sex == {0: "F", 1: "M"}
        assert attrs.caste == {0: "OBC"}
        assert attrs.age == {0: 30, 2: 41}
        assert attrs.has_record(2) and not attrs.has_record(3)

    def test_bad_age(self):
        with pytest.raises(ParseError, match="age"):
            load_attributes(io.StringIO("node_id,sex,caste,age\n0,F,OBC,old\n"))

    def test_header_required(self):
        with pytest.raises(ParseError, match="header"):
            load_attributes(io.StringIO("0,F,OBC,30\n"))

    def test_translate(self):
        text = "node_id,sex,caste,age\n10,F,,\n30,M,,\n"
        attrs = load_attributes(io.StringIO(text))
        local = attrs.translate(np.asarray([10, 20, 30]))
        assert local.sex == {0: "F", 2: "M"}
        assert local.known == frozenset({0, 2})
