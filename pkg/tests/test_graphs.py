from lsemStability import MixedGraph
from lsemStability.errors import CycleDetected, InvalidGraph, InvalidSize, InputFileError
from lsemStability.graphs import clique_of_paths, layered_graph, path_graph
import numpy as np
import pytest
import unittest


class TestMixedGraph(unittest.TestCase):
    def test_bow_free(self):
        self.assertTrue(path_graph(4).is_bow_free())
        self.assertFalse(MixedGraph(3, [(0, 1)], [(1, 0)]).is_bow_free())
        self.assertTrue(MixedGraph(3, [(0, 1)], [(0, 2)]).is_bow_free())

    def test_topological_order(self):
        self.assertEqual(path_graph(3).topological_order(), [0, 1, 2])
        self.assertEqual(MixedGraph(3).topological_order(), [0, 1, 2])
        self.assertEqual(MixedGraph(2, [(1, 0)]).topological_order(), [1, 0])

    def test_cycle(self):
        g = MixedGraph(3, [(0, 1), (1, 2), (2, 1)])
        with self.assertRaises(CycleDetected) as cm:
            g.topological_order()
        self.assertEqual(cm.exception.remaining, [1, 2])

    def test_invalid(self):
        with self.assertRaises(InvalidGraph):
            MixedGraph(2, [(0, 2)])
        with self.assertRaises(InvalidGraph):
            MixedGraph(2, [], [(1, 1)])
        with self.assertRaises(InvalidSize):
            MixedGraph(0)
        with self.assertRaises(InvalidGraph):
            MixedGraph(2, [(0, 1)], names=["a"])

    def test_bidirected_normalised(self):
        g = MixedGraph(3, [], [(2, 0)])
        self.assertEqual(g.bidirected, {(0, 2)})

    def test_parents_and_indegree(self):
        g = clique_of_paths(6, 2)
        self.assertEqual(g.parents(2), [0, 1])
        self.assertEqual(g.parents(0), [])
        self.assertEqual(g.max_indegree, 2)
        self.assertTrue(path_graph(5).is_path)
        self.assertFalse(g.is_path)


class TestFamilies(unittest.TestCase):
    def test_path(self):
        g = path_graph(4)
        self.assertEqual(g.directed, {(0, 1), (1, 2), (2, 3)})
        self.assertEqual(g.bidirected, {(0, 2), (0, 3), (1, 3)})
        self.assertEqual(path_graph(2).bidirected, set())
        self.assertEqual(path_graph(3).bidirected, {(0, 2)})
        with self.assertRaises(InvalidSize):
            path_graph(1)

    def test_clique_of_paths(self):
        self.assertEqual(clique_of_paths(4, 2).directed, {(0, 2), (0, 3), (1, 2), (1, 3)})
        self.assertEqual(clique_of_paths(4, 1), path_graph(4))
        self.assertEqual(clique_of_paths(2, 2).directed, set())
        with self.assertRaises(InvalidSize):
            clique_of_paths(5, 2)

    def test_layered_extremes(self):
        rng = np.random.default_rng(1)
        self.assertEqual(layered_graph(30, 5, 0.0, rng), clique_of_paths(30, 5))
        empty = layered_graph(30, 5, 1.0, rng)
        self.assertEqual(empty.directed, set())
        self.assertEqual(len(empty.bidirected), 30 * 29 // 2)

    def test_layered_reproducible(self):
        a = layered_graph(30, 5, 0.5, np.random.default_rng(42))
        b = layered_graph(30, 5, 0.5, np.random.default_rng(42))
        self.assertEqual(a, b)


def test_layered_edge_count():
    counts = [
        len(layered_graph(30, 5, 0.5, np.random.default_rng(seed)).directed)
        for seed in range(1000)
    ]
    assert abs(np.mean(counts) - 62.5) <= 3


@pytest.mark.parametrize("n,k", [(6, 1), (6, 2), (12, 3), (30, 5)])
def test_families_bow_free(n, k):
    assert clique_of_paths(n, k).is_bow_free()
    assert layered_graph(n, k, 0.3, np.random.default_rng(n)).is_bow_free()
    assert len(clique_of_paths(n, k).topological_order()) == n


def test_json_file(tmp_path):
    g = MixedGraph(4, [(2, 3), (0, 1)], [(3, 1), (0, 2)], names=["a", "b", "c", "d"])
    assert g.asJSON() == {
        "n": 4,
        "directed": [[0, 1], [2, 3]],
        "bidirected": [[0, 2], [1, 3]],
        "names": ["a", "b", "c", "d"],
    }
    path = tmp_path / "graph.json"
    g.save(str(path))
    loaded = MixedGraph.load(str(path))
    assert loaded == g
    assert loaded.names == ["a", "b", "c", "d"]


def test_missing_graph_file(tmp_path):
    missing = str(tmp_path / "nope.json")
    with pytest.raises(InputFileError) as e:
        MixedGraph.load(missing)
    assert e.value.path == missing
