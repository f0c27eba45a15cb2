import pytest

from deckrecon.errors import InputError
from deckrecon.generators import FAMILIES, GenSpec, generate, ground_truth, trim_to_cap, write_graph
from deckrecon.graph import Graph, clique_profile, degree_histogram


def _acyclic(g: Graph) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def test_matching():
    g = generate(GenSpec("matching", 100))
    assert g.m == 50 and degree_histogram(g).as_dict() == {1: 100}


def test_disjoint_triangles():
    g = generate(GenSpec("disjoint_triangles", 300, 2))
    assert g.m == 300 and clique_profile(g, 3).total == 100
    with pytest.raises(InputError):
        generate(GenSpec("disjoint_triangles", 301, 2))
    with pytest.raises(InputError):
        generate(GenSpec("disjoint_triangles", 300, 1))


def test_erdos_renyi_capped():
    g = generate(GenSpec("erdos_renyi_capped", 10**4, 1, 7))
    assert 2 * g.m <= g.n
    assert ground_truth(g)["histogram"] == [list(x) for x in degree_histogram(g).items()]
    dense = generate(GenSpec("erdos_renyi_capped", 300, 2, 1, {"p": 0.1}))
    assert 2 * dense.m <= 2 * 300 and dense.m > 250


def test_trim_prefers_high_degree_vertices():
    star = [(0, v) for v in range(1, 6)]
    kept = trim_to_cap(8, star + [(6, 7)], 1)
    assert len(kept) == 4 and (6, 7) in kept


@pytest.mark.parametrize("seed", range(20))
def test_random_forest(seed):
    g = generate(GenSpec("random_forest", 500, 2, seed))
    assert g.m == 499 and _acyclic(g) and 2 * g.m <= 2 * g.n
    h = generate(GenSpec("random_forest", 500, 1, seed, {"edges": 100}))
    assert h.m == 100 and _acyclic(h)


@pytest.mark.parametrize("spec", [
    GenSpec("random_forest", 200, 2, 3),
    GenSpec("erdos_renyi_capped", 400, 3, 9),
    GenSpec("star_union", 100, 1, 0, {"leaves": "10,20"}),
    GenSpec("cycle", 40, 2),
])
def test_deterministic_and_capped(spec):
    a, b = generate(spec), generate(spec)
    assert a.to_edge_list() == b.to_edge_list()
    assert 2 * a.m <= spec.d * a.n


def test_seeds_differ():
    a = generate(GenSpec("random_forest", 200, 2, 1))
    b = generate(GenSpec("random_forest", 200, 2, 2))
    assert a.to_edge_list() != b.to_edge_list()


def test_star_union():
    g = generate(GenSpec("star_union", 101, 2, 0, {"leaves": [60]}))
    with pytest.raises(InputError):
        generate(GenSpec("star_union", 101, 1, 0, {"leaves": [60]}))
    assert degree_histogram(g).as_dict() == {0: 40, 1: 60, 60: 1}
    with pytest.raises(InputError):
        generate(GenSpec("star_union", 50, 1, 0, {"leaves": [60]}))
    with pytest.raises(InputError):
        generate(GenSpec("star_union", 50, 1))


def test_invalid_specs():
    with pytest.raises(InputError):
        generate(GenSpec("hypercube", 10))
    with pytest.raises(InputError):
        generate(GenSpec("matching", 0))
    with pytest.raises(InputError):
        generate(GenSpec("cycle", 10, 1))
    with pytest.raises(InputError):
        generate(GenSpec("random_forest", 10, 1, 0, {"edges": 9}))
    with pytest.raises(InputError):
        generate(GenSpec("from_file", 0))
    assert len(FAMILIES) == 7


def test_write_and_reload(tmp_path):
    g = generate(GenSpec("disjoint_triangles", 30, 2))
    sidecar = write_graph(g, tmp_path / "tri.txt")
    import json

    truth = json.loads(sidecar.read_text())
    assert truth == {"n": 30, "m": 30, "histogram": [[2, 30]], "triangle_count": 10}
    back = generate(GenSpec("from_file", 0, 2, 0, {"path": str(tmp_path / "tri.txt")}))
    assert back.to_edge_list() == g.to_edge_list()
    with pytest.raises(InputError):
        generate(GenSpec("from_file", 0, 1, 0, {"path": str(tmp_path / "tri.txt")}))
