from fractions import Fraction

import pytest

import oracle
from finitype.dimension import q_vector
from finitype.ifs import compose, generation_words
from finitype.netstructure import (
    CharacteristicVector,
    Edge,
    NotFiniteTypeError,
    VectorGraph,
    build_vector_graph,
    children,
    instantiate_path,
    net_intervals,
    prune_to_attractor,
    adjacent_path,
    root_vector,
)
from finitype.systems import (
    golden_field,
    golden_reflected,
    golden_translates,
    middle_thirds_cantor,
    n_map,
    three_maps_half,
    thirds,
)

K = golden_field()
r = K.gen

SYSTEMS = {
    "translates": (golden_translates, oracle.GOLDEN),
    "reflected": (golden_reflected, oracle.GOLDEN),
    "half": (three_maps_half, None),
    "nmap": (n_map, None),
    "thirds": (thirds, None),
    "cantor": (middle_thirds_cantor, None),
}


# [PAPER] the root vector
def test_root_vector():
    root = root_vector(K)
    assert root.length == 1
    assert root.neighbours == ((K.zero, K.one),)
    assert root.sibling_index == 1


# [PAPER] vector counts: 7, 8, four reduced, three reduced
def test_vector_counts(translates_graph, reflected_graph, half_graph, nmap_graph):
    assert len(translates_graph) == 7
    assert len(reflected_graph) == 8
    assert half_graph.num_reduced == 4
    assert nmap_graph.num_reduced == 3


# [PAPER] children lists quoted for the golden translates
def test_translates_children(translates_graph):
    g = translates_graph
    assert g.children(1) == [2, 3, 4]
    assert g.children(5) == [3, 6, 7]
    assert g.children(2) == [2, 3]


# [PAPER] reduced labels of the children of vector 2 in the N-map: 1, 2, 3, 1
def test_nmap_children(nmap_graph):
    g = nmap_graph
    labels = g.reduced_labels
    assert [labels[c] for c in g.children(2)] == [1, 2, 3, 1]


# [TRIVIAL] children depend only on the reduced vector
def test_children_use_reduced_vector_only(translates_graph):
    g = translates_graph
    a, b = g.vectors[3], g.vectors[7]
    assert a.reduced == b.reduced and a != b
    ca, cb = children(g.ifs, a), children(g.ifs, b)
    assert [(c.vector, c.offset, c.raw) for c in ca] == [(c.vector, c.offset, c.raw) for c in cb]


def test_every_vector_has_children(translates_graph, reflected_graph, half_graph, nmap_graph, cantor_graph):
    for g in (translates_graph, reflected_graph, half_graph, nmap_graph, cantor_graph):
        assert all(g.children(v) for v in g.vectors)


# [DERIVED] the Cantor gap [1/3, 2/3] never becomes a net interval
def test_cantor_gap_excluded(cantor_graph):
    third = cantor_graph.ifs.r_min
    for n in range(1, 6):
        for inst in net_intervals(cantor_graph, n):
            assert inst.b - inst.a == third**n
            assert inst.b <= third or inst.a >= 2 * third


# [TRIVIAL] a vector with no path to a cycle is dropped
def test_prune_drops_dead_ends():
    g = build_vector_graph(middle_thirds_cantor(), prune=False)
    e = g.edges[1][0]
    dead = CharacteristicVector(g.field(Fraction(1, 2)), g.vectors[1].neighbours, 1)
    vectors = dict(g.vectors)
    vectors[99] = dead
    edges = dict(g.edges)
    edges[1] = g.edges[1] + (Edge(1, 99, 2, e.offset, e.raw, e.matrix),)
    edges[99] = ()
    pruned = prune_to_attractor(VectorGraph(g.ifs, vectors, edges))
    assert len(pruned) == len(g)
    assert sorted(pruned.children(1)) == sorted(g.children(1))


# [PAPER] nothing is pruned when the attractor is [0, 1]
@pytest.mark.parametrize("make", [golden_translates, golden_reflected, three_maps_half])
def test_nothing_pruned_on_interval(make):
    assert len(build_vector_graph(make(), prune=False)) == len(build_vector_graph(make()))


def test_max_vectors_cap():
    with pytest.raises(NotFiniteTypeError) as info:
        build_vector_graph(golden_translates(), max_vectors=3)
    assert len(info.value.partial.vectors) == 3
    with pytest.raises(ValueError):
        build_vector_graph(golden_translates(), max_vectors=0)


# [TRIVIAL] / [DERIVED] instantiated endpoints
def test_instantiate_path(translates_graph):
    g = translates_graph
    root = instantiate_path(g, (1,))
    assert (root.a, root.b) == (0, 1)
    inst = instantiate_path(g, (1, 2))
    assert (inst.a, inst.b) == (0, 1 - r) == (0, r * r)
    with pytest.raises(ValueError):
        instantiate_path(g, (1, 5))
    with pytest.raises(ValueError):
        instantiate_path(g, (2, 2))


# [DERIVED] the leftmost net interval of generation m is [0, r**(m+1)], checked against the oracle
@pytest.mark.parametrize("m", range(1, 6))
def test_leftmost_chain(translates_graph, m):
    inst = instantiate_path(translates_graph, (1,) + (2,) * m)
    assert inst.a == 0 and inst.b == r ** (m + 1)
    u, v, _ = oracle.net_intervals(golden_translates(), m, oracle.Arith(oracle.GOLDEN))[0]
    ar = oracle.Arith(oracle.GOLDEN)
    assert (ar.conv(inst.a), ar.conv(inst.b)) == (u, v)


# [DERIVED] endpoints, neighbour sets and neighbour masses against the brute-force oracle
@pytest.mark.parametrize("name", list(SYSTEMS))
@pytest.mark.parametrize("n", range(5))
def test_net_intervals_match_oracle(request, name, n):
    make, rho = SYSTEMS[name]
    if name == "nmap" and n == 4:
        pytest.skip("covered by the acceptance suite")
    g = request.getfixturevalue(f"{name}_graph")
    ar = oracle.Arith(rho)
    expected = oracle.net_intervals(make(), n, ar)
    got = list(net_intervals(g, n))
    assert len(got) == len(expected)
    for inst, (u, v, masses) in zip(got, expected):
        assert (ar.conv(inst.a), ar.conv(inst.b)) == (u, v)
        keys = [(ar.conv(a), ar.conv(L)) for a, L in inst.vector.neighbours]
        assert set(keys) == set(masses)
        q = q_vector(g, inst.path)
        assert [ar.conv(x) for x in q] == [masses[k] for k in keys]
        assert inst.b - inst.a == g.ifs.r_min**n * inst.vector.length


# [DERIVED] net intervals tile [0, 1] up to gaps and reproduce the basic-interval breakpoints
@pytest.mark.parametrize("make", [golden_translates, golden_reflected, three_maps_half])
@pytest.mark.parametrize("n", range(6))
def test_tiling_and_breakpoints(make, n):
    ifs = make()
    g = build_vector_graph(ifs)
    insts = list(net_intervals(g, n))
    assert insts[0].a == 0 and insts[-1].b == 1
    for x, y in zip(insts, insts[1:]):
        assert x.b == y.a
    ends = set()
    for w in generation_words(ifs, n):
        ends.update(compose(ifs, w).image())
    assert {i.a for i in insts} | {insts[-1].b} == ends


def test_neighbour_order(reflected_graph):
    for cv in reflected_graph.vectors.values():
        nb = cv.neighbours
        assert len(set(nb)) == len(nb)
        for (a1, L1), (a2, L2) in zip(nb, nb[1:]):
            assert a1 < a2 or (a1 == a2 and L1 < L2)


def test_adjacent_path(translates_graph):
    g = translates_graph
    insts = list(net_intervals(g, 4))
    for left, right in zip(insts, insts[1:]):
        assert adjacent_path(g, left.path, +1) == right.path
        assert adjacent_path(g, right.path, -1) == left.path
    assert adjacent_path(g, insts[0].path, -1) is None
    assert adjacent_path(g, insts[-1].path, +1) is None
