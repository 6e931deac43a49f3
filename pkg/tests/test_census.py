import gzip
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aalpha.census import (CensusInputError, CensusReport, CorruptInputError, check_family_mate_free,
                           decimal_string, families_from_json, run_census,
                           structural_tree_violations)
from aalpha.engine import alpha_charpoly
from aalpha.families import cycle, path, starlike
from aalpha.graph import Graph, to_graph6
from aalpha.iso import are_isomorphic

from conftest import corpus, corpus_lines, graphs


def lines_of(gs):
    return [to_graph6(g) + b"\n" for g in gs]


def shuffled_relabel(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def test_report_rows():
    for n, want in [(1, "1\t1\t1\t0\t0.000000000\t1"), (3, "3\t4\t4\t0\t0.000000000\t1")]:
        assert run_census(corpus_lines(n)).report.tsv_row() == want


def test_decimal_truncates():
    assert decimal_string(Fraction(2, 274668), 9) == "0.000007281"
    assert decimal_string(Fraction(1, 3), 3) == "0.333"
    assert decimal_string(Fraction(2, 3), 3) == "0.666"
    assert decimal_string(Fraction(1), 2) == "1.00"


def test_report_json():
    r = CensusReport(9, 274668, 274667, 2, 2)
    assert r.to_json()["fraction"] == "1/137334"
    assert r.to_json()["fraction_decimal"] == "0.000007281"


def test_order_independent_and_conserving():
    lines = list(corpus_lines(6))
    base = run_census(lines, chunk_size=50)
    rng = random.Random(3)
    for _ in range(3):
        rng.shuffle(lines)
        other = run_census(lines, chunk_size=rng.randint(7, 400))
        assert other.report == base.report and other.families == base.families
    r = base.report
    assert r.graphs == r.distinct_polys + r.with_mate - len(base.families)


def test_threads_agree():
    lines = corpus_lines(7)
    one = run_census(lines, chunk_size=100)
    two = run_census(lines, chunk_size=100, threads=2)
    assert one.report.tsv_row() == two.report.tsv_row()
    assert one.families == two.families


def test_exact_map_agrees_with_batch():
    lines = corpus_lines(6)
    assert run_census(lines, exact=True).report == run_census(lines).report


def test_gzip_and_path_input(tmp_path):
    path_ = tmp_path / "g5.g6.gz"
    with gzip.open(path_, "wb") as fh:
        fh.write(b"".join(l + b"\n" for l in corpus_lines(5)))
    assert run_census(path_).report.tsv_row() == "5\t34\t34\t0\t0.000000000\t1"


def test_input_errors():
    with pytest.raises(CensusInputError, match="empty"):
        run_census([])
    with pytest.raises(CensusInputError) as info:
        run_census([b"A_\n", b"A?\n", b"Bw\n"])
    assert info.value.line == 3 and "mixed" in str(info.value)
    with pytest.raises(CensusInputError) as info:
        run_census([b"Bw\n", b"B!\n"])
    assert info.value.line == 2
    with pytest.raises(CensusInputError) as info:
        run_census([b"A_", b"\n", b"A`"])
    assert info.value.line == 3


def test_repeated_graph_is_corrupt_input():
    rng = random.Random(1)
    g = cycle(5)
    with pytest.raises(CorruptInputError):
        run_census(lines_of([g, shuffled_relabel(g, rng)]) + lines_of(corpus(5)[:3]))
    with pytest.raises(CorruptInputError):
        run_census(lines_of([g, g]))


# -- tree-check helpers ---------------------------------------------------------------

def test_mate_free_checks_on_synthetic_family():
    # no real family exists below n = 9, so hand-make one around the 3-leg star
    star = starlike((1, 1, 1))
    fam = families_from_json([{"polynomial": str(alpha_charpoly(star)),
                               "members": [to_graph6(star).decode(), "C^"]}])
    hits = check_family_mate_free([("S:1,1,1", star), ("P:4", path(4))], fam)
    assert [v.label for v in hits] == ["S:1,1,1"]
    assert [v.reason for v in structural_tree_violations(fam)] == [
        "starlike tree inside a cospectral family"]


# -- isomorphism --------------------------------------------------------------------

def nxg(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=1, max_n=9), graphs(min_n=1, max_n=9))
def test_iso_matches_networkx(g, h):
    assert are_isomorphic(g, h) == nx.is_isomorphic(nxg(g), nxg(h))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_iso_detects_relabelling(g, rng):
    assert are_isomorphic(g, shuffled_relabel(g, rng))


def test_iso_on_regular_graphs():
    # cospectral-looking regular pair: C_6 vs two triangles, and the two 3-regular graphs on 6 vertices
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(cycle(6), two_triangles)
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    assert not are_isomorphic(prism, k33)
    assert are_isomorphic(prism, prism.relabel([5, 3, 4, 2, 0, 1]))
