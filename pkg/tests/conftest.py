import pytest

from isomat import data_path, load_graph
from isomat.multimatroid import shelter_from_text


@pytest.fixture
def c5():
    return load_graph("c5.lsg")


@pytest.fixture
def h_graph():
    return load_graph("h.lsg")


@pytest.fixture
def w5():
    return load_graph("w5.lsg")


@pytest.fixture
def fan():
    return load_graph("fig2.lsg")


def load_shelter(name):
    return shelter_from_text(data_path(name).read_text())
