import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doccalc.amplitudes import (
    TEST_GRAPHS,
    EnumerationCapExceeded,
    Network,
    chain_amplitude,
    chain_network,
    checkerboard_evolve,
    checkerboard_path_oracle,
    disjoint_union,
    is_planar_embedding,
    k33_graph,
    network_partition_function,
    parse_network,
    path_count,
    penrose_count,
    penrose_weight,
    theta_graph,
)
from doccalc.ncalg import GaussianRational

I = GaussianRational(0, 1)


def brute_force_colorings(g: Network) -> int:
    """Independent oracle: try every assignment of 3 colors to the edges."""
    names = list(g.edges)
    count = 0
    for cols in itertools.product(range(3), repeat=len(names)):
        c = dict(zip(names, cols))
        if all(len({c[e] for e in rot}) == len(rot) for rot in g.rotation.values()):
            count += 1
    return count


EXPECTED = {"theta": 6, "k4": 6, "prism": 6, "cube": 24, "bridged": 0}


@pytest.mark.parametrize("name", sorted(TEST_GRAPHS))
def test_penrose_equals_coloring_count(name):
    g = TEST_GRAPHS[name]()
    assert is_planar_embedding(g)
    r = penrose_count(g)
    assert r.value == brute_force_colorings(g) == EXPECTED[name]


def test_penrose_multiplicative_over_disjoint_union():
    a, b = TEST_GRAPHS["theta"](), TEST_GRAPHS["k4"]()
    u = penrose_count(disjoint_union(a, b))
    assert u.value == penrose_count(a).value * penrose_count(b).value == 36


def test_penrose_nonplanar_embedding():
    g = k33_graph()
    assert not is_planar_embedding(g)
    r = penrose_count(g)
    assert r.colorings == brute_force_colorings(g) == 12
    assert not r.agrees


def test_penrose_rejects_wrong_degree():
    g = Network({"u": [0], "v": [0]}, {0: ("u", "v")})
    with pytest.raises(ValueError):
        penrose_count(g)


@given(st.integers(0, 2**31))
def test_partition_function_relabel_invariant(seed):
    rng = random.Random(seed)
    g = TEST_GRAPHS[rng.choice(sorted(TEST_GRAPHS))]()
    vs, es = list(g.rotation), list(g.edges)
    vnew, enew = list(range(len(vs))), list(range(len(es)))
    rng.shuffle(vnew)
    rng.shuffle(enew)
    h = g.relabel(dict(zip(vs, vnew)), dict(zip(es, enew)))
    assert penrose_count(h).value == penrose_count(g).value


def test_network_validation():
    with pytest.raises(ValueError):
        Network({"u": [0, 1]}, {0: ("u", "w")})
    with pytest.raises(ValueError):
        Network({"u": [0]}, {0: ("u", None)}, fixed={0: 5})


def test_parse_network_theta():
    text = """
    colors 3
    edge a u v
    edge b u v
    edge c u v
    vertex u a b c
    vertex v c b a
    """
    assert penrose_count(parse_network(text)).value == 6
    with pytest.raises(ValueError):
        parse_network("edge a u\n")


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        g = theta_graph()
        network_partition_function(Network(g.rotation, g.edges, 3, penrose_weight), cap=2)


# -- chains ------------------------------------------------------------------------

def test_chain_single_link():
    assert chain_amplitude([[[1, 2], [3, 4]]], 1, 0) == 3


def test_chain_dimension_mismatch():
    with pytest.raises(ValueError):
        chain_amplitude([[[1, 2]], [[1, 2]]], 0, 0)


@given(st.integers(0, 2**31))
def test_chain_associativity(seed):
    rng = random.Random(seed)
    ws = [[[GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
          for _ in range(rng.randint(2, 5))]
    cut = rng.randint(1, len(ws) - 1)
    s, e = rng.randint(0, 1), rng.randint(0, 1)
    full = chain_amplitude(ws, s, e)
    split = sum((chain_amplitude(ws[:cut], s, m) * chain_amplitude(ws[cut:], m, e) for m in range(2)),
                GaussianRational(0))
    assert full == split
    assert network_partition_function(chain_network(ws, s, e)) == full


# -- checkerboard ----------------------------------------------------------------------

def test_checkerboard_examples():
    lat = checkerboard_evolve(4)
    assert lat.psi(0, 0) == (0, 1)
    # straight run along a keeps the right-mover amplitude 1
    assert lat.psi(3, 0) == (0, 1)
    # exactly one turn
    assert lat.psi(1, 1)[0] == I
    assert checkerboard_path_oracle((1, 1), "L") == I
    # the right-mover turns once at the origin and then runs along b
    assert lat.psi(0, 2) == (I, 0)


def test_checkerboard_boundary_zeros():
    lat = checkerboard_evolve(6)
    assert all(lat.psi(a, 0)[0] == 0 for a in range(1, 7))
    assert all(lat.psi(0, b)[1] == 0 for b in range(1, 7))


@pytest.mark.parametrize("source", [None, (1, 0), ("1/2", "i")])
def test_checkerboard_matches_path_sum(source):
    lat = checkerboard_evolve(12, source)
    for a, b in lat.points():
        pl, pr = lat.psi(a, b)
        assert pl == checkerboard_path_oracle((a, b), "L", source)
        assert pr == checkerboard_path_oracle((a, b), "R", source)


def test_checkerboard_amplitudes_are_gaussian_integers():
    lat = checkerboard_evolve(10)
    for p in lat.points():
        assert all(v.is_integral() for v in lat.psi(*p))


def test_checkerboard_csv_and_limits():
    text = checkerboard_evolve(2).to_csv()
    assert text.splitlines()[0] == "a,b,re_psi_L,im_psi_L,re_psi_R,im_psi_R"
    assert len(text.splitlines()) == 1 + 6
    with pytest.raises(ValueError):
        checkerboard_evolve(-1)
    with pytest.raises(ValueError):
        checkerboard_path_oracle((30, 0), "L")
    assert path_count(2, 2) == 6
