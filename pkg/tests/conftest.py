import numpy as np
import pytest
from hypothesis import strategies as st

from clique_spectra.graph import BlockSpec, build_clique_tree


@st.composite
def clique_trees(draw, max_blocks=6, max_size=5):
    k = draw(st.integers(1, max_blocks))
    specs = [BlockSpec(draw(st.integers(2, max_size)))]
    n = specs[0].size
    for i in range(1, k):
        size = draw(st.integers(2, max_size))
        v = draw(st.integers(0, n - 1))
        specs.append(BlockSpec(size, attach_vertex=v))
        n += size - 1
    return build_clique_tree(specs)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(RESULTS):
        ok, detail = RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
