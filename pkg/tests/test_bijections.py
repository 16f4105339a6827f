import pytest

from permcomp.bijections import (
    M,
    M_inverse,
    PathLabeling,
    StarLabeling,
    T_power,
    path_labeling,
    path_to_star,
    star_labeling,
    star_to_path,
)
from permcomp.compgraph import weighted_competition_graph
from permcomp.enumeration import wcg_preimage
from permcomp.errors import KOutOfRange, NotA123Path, NotAPath, NotAStar
from permcomp.graph import WeightedGraph, core_key, path_graph, star_graph
from permcomp.perm import Permutation, avoids


def P(s):
    return Permutation.parse(s)


def values(pi, positions):
    return [pi[p - 1] for p in positions]


def broom(m, k):
    """Centre joined to k+2 vertices, one of which starts a path of m-k-2 more edges."""
    edges = {(0, j): 1 for j in range(1, k + 3)}
    tail = k + 2
    for j in range(m - k - 2):
        edges[(tail, k + 3 + j)] = 1
        tail = k + 3 + j
    return WeightedGraph(m + 1, edges)


# --- labelings -----------------------------------------------------------------


def test_path_labeling_examples():
    lab = path_labeling(P("5736124"))
    assert lab == PathLabeling((2, 4, 7, 6)) and lab.m == 3
    assert values(P("5736124"), lab.positions) == [7, 6, 4, 2]
    lab = path_labeling(P("5736142"))
    assert lab.positions == (2, 4, 6, 7)
    lab = path_labeling(P("123"))
    assert values(P("123"), lab.positions) == [2, 3]


def test_path_labeling_conditions_on_all_instances():
    for m, n in ((3, 7), (3, 8), (4, 9), (2, 6)):
        for pi in wcg_preimage(path_graph(m, weighted=True), n):
            pos = path_labeling(pi).positions
            assert list(pos[: m]) == sorted(pos[: m])
            if m >= 2:
                assert pos[m] > pos[m - 2]
                assert pi[pos[m] - 1] < pi[pos[1] - 1]
            w = weighted_competition_graph(pi)
            for a, b in zip(pos, pos[1:]):
                assert w.weight(a - 1, b - 1) == 1


def test_path_labeling_rejects_non_paths():
    for bad in ("5634127", "1234", "4321"):
        with pytest.raises(NotAPath):
            path_labeling(P(bad))


def test_star_labeling_examples():
    lab = star_labeling(P("5634127"))
    assert lab == StarLabeling(7, (2, 4, 6)) and lab.m == 3
    assert values(P("5634127"), lab.leaves) == [6, 4, 2]
    lab = star_labeling(P("5734162"))
    assert lab.center == 6 and values(P("5734162"), lab.leaves) == [7, 4, 2]
    lab = star_labeling(P("123"))
    assert P("123")[lab.center - 1] == 3 and lab.leaves == (2,)


def test_star_labeling_rejects_non_stars():
    for bad in ("5736124", "1234", "54321"):
        with pytest.raises(NotAStar):
            star_labeling(P(bad))


# --- T ---------------------------------------------------------------------------


def test_T_examples():
    pi = P("5736142")
    assert T_power(pi, 0) == pi
    assert str(T_power(pi, 1, check=True)) == "5734162"
    assert str(T_power(P("5736124"), 1, check=True)) == "5734126"
    with pytest.raises(KOutOfRange):
        T_power(pi, 2)
    with pytest.raises(NotAPath):
        T_power(P("5634127"), 1)


def test_path_star_roundtrip_examples():
    assert str(path_to_star(P("5736142"))) == "5734162"
    assert str(star_to_path(P("5734162"))) == "5736142"
    assert str(path_to_star(P("5736124"))) == "5734126"
    assert str(star_to_path(P("5734126"))) == "5736124"


@pytest.mark.parametrize("n", [7, 8])
def test_T_bijection(n):
    paths = wcg_preimage(path_graph(3, weighted=True), n)
    stars = wcg_preimage(star_graph(3, weighted=True), n)
    image = {path_to_star(pi, check=True) for pi in paths}
    assert image == stars and len(image) == len(paths)
    for pi in paths:
        assert star_to_path(path_to_star(pi)) == pi


def test_T_intermediate_shapes_m4():
    paths = wcg_preimage(path_graph(4, weighted=True), 9)
    assert paths
    for pi in paths:
        mid = T_power(pi, 1, check=True)
        assert core_key(weighted_competition_graph(mid)) == core_key(broom(4, 1))
        end = path_to_star(pi, check=True)
        assert core_key(weighted_competition_graph(end)) == core_key(star_graph(4, weighted=True))
        assert star_to_path(end) == pi


def test_short_paths_are_stars():
    assert path_to_star(P("34125")) == P("34125")
    assert star_to_path(P("34125")) == P("34125")


# --- M -----------------------------------------------------------------------------


def test_M_examples():
    assert str(M(P("5736142"))) == "5634127"
    assert str(M_inverse(P("5634127"))) == "5736142"


def test_M_errors():
    with pytest.raises(NotA123Path):
        M(P("5736124"))  # contains 123
    with pytest.raises(NotAStar):
        M_inverse(P("5734162"))  # contains 132


@pytest.mark.parametrize("m, n", [(3, 7), (3, 8), (2, 6), (4, 9)])
def test_M_bijection(m, n):
    paths = wcg_preimage(path_graph(m, weighted=True), n, (1, 2, 3))
    stars = wcg_preimage(star_graph(m, weighted=True), n, (1, 3, 2))
    image = set()
    for pi in paths:
        out = M(pi)
        assert avoids(out, (1, 3, 2))
        assert M_inverse(out) == pi
        image.add(out)
    assert image == stars and len(image) == len(paths)
