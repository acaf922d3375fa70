import pytest

from tests.graph_corpus import named_graphs


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow", action="store_true", default=False, help="run the full acceptance sweeps"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full acceptance sweep, enabled by --run-slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def graphs_by_name():
    return named_graphs()


@pytest.fixture
def p4(graphs_by_name):
    return graphs_by_name["p4"]


@pytest.fixture
def c5(graphs_by_name):
    return graphs_by_name["c5"]


@pytest.fixture
def k33(graphs_by_name):
    return graphs_by_name["k33"]
