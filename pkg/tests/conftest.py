import pytest

from helpers import make_graph


@pytest.fixture
def ex1():
    # running example: five undirected events over four vertices
    return make_graph([(0, "a", "b"), (1, "b", "c"), (2, "a", "b"), (3, "c", "a"), (4, "c", "d")])


@pytest.fixture
def ex2():
    # influence example: one influential source, one bystander edge
    return make_graph(
        [(0, "s", "a"), (1, "x", "v"), (2, "a", "v")], directed=True, influential=["s"]
    )


@pytest.fixture
def ex3():
    # triangle plus a repeated closing edge; vertex d stays isolated
    return make_graph(
        [(0, "a", "b"), (1, "b", "c"), (2, "c", "a"), (3, "a", "b")],
        vertices=["a", "b", "c", "d"],
    )
