import pytest

from uzstem.analyzer import Analyzer, AnalyzerConfig
from uzstem.inventory import load_inventory
from uzstem.machines import default_graph


@pytest.fixture(scope="session")
def inv():
    return load_inventory()


@pytest.fixture(scope="session")
def graph():
    return default_graph()


@pytest.fixture(scope="session")
def analyzer(graph):
    return Analyzer(graph)


@pytest.fixture(scope="session")
def all_config():
    return AnalyzerConfig(emit_all=True, max_analyses=None)


@pytest.fixture(scope="session")
def full_analyzer(graph, all_config):
    return Analyzer(graph, all_config)


def _label(graph, surface, class_id, role=None):
    """The single edge label for ``surface`` in ``class_id`` (optionally with a role)."""
    hits = [
        lbl
        for lbl, info in graph.labels.items()
        if info.allomorph.surface == surface and info.allomorph.class_id == class_id and info.role == role
    ]
    assert len(hits) == 1, (surface, class_id, role, hits)
    return hits[0]


@pytest.fixture(scope="session")
def lbl(graph):
    return lambda surface, class_id, role=None: _label(graph, surface, class_id, role)
