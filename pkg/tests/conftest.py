import pytest

from sipmark.bitonic import encode_f1
from sipmark.config import CONFIG_ENV_VAR, ToolkitConfig
from sipmark.flow_graph import FlowGraph
from sipmark.fullbitonic import encode_f2
from sipmark.graph_io import write_graph
from sipmark.toolkit import WatermarkToolkit
from sipmark.watermark import encode_watermark

# pi* for w=20, w=45 and w=54
PI_20 = (6, 8, 11, 10, 9, 1, 7, 2, 5, 4, 3)
PI_45 = (7, 9, 10, 12, 13, 11, 1, 8, 2, 3, 6, 4, 5)
PI_54 = (7, 8, 10, 11, 13, 12, 1, 2, 9, 3, 4, 6, 5)


def is_all_ones(w: int) -> bool:
    return w & (w + 1) == 0


@pytest.fixture(autouse=True)
def no_config_env(monkeypatch):
    """Keep a developer's SIPMARK_CONFIG out of the tests."""
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


@pytest.fixture
def toolkit():
    return WatermarkToolkit(config=ToolkitConfig())


@pytest.fixture
def f1_w20():
    return encode_f1(encode_watermark(20))


@pytest.fixture
def f2_w45():
    return encode_f2(encode_watermark(45))


@pytest.fixture
def irreducible_triangle():
    """s -> a, s -> b, a <-> b: a loop with two entries."""
    return FlowGraph(3, frozenset({(2, 0), (2, 1), (0, 1), (1, 0)}), source=2)


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph to a temporary .rpg file and return its path."""
    def _write(graph, name="graph.rpg"):
        path = tmp_path / name
        write_graph(path, graph)
        return path
    return _write
