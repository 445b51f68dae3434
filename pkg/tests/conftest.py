import pytest
from hypothesis import settings, strategies as st

from gcsurgery.cli import bundled_scenarios
from gcsurgery.dsl import execute_scenario, parse_scenario
from gcsurgery.groups import FreeWord, Presentation

# reproducible property runs
settings.register_profile("repro", derandomize=True, print_blob=True)
settings.load_profile("repro")

SCENARIOS = {p.stem: p for p in bundled_scenarios()}


def load(stem: str):
    path = SCENARIOS[stem]
    return parse_scenario(path.read_text(encoding="utf-8"), stem)


_results: dict = {}


def run(stem: str):
    """Execute a bundled scenario with default budgets, cached per session."""
    if stem not in _results:
        _results[stem] = execute_scenario(load(stem))
    return _results[stem]


@pytest.fixture(scope="session")
def corpus():
    return dict(SCENARIOS)


def letters(ngens: int, max_size: int = 12):
    nz = st.integers(1, ngens).flatmap(lambda g: st.sampled_from([g, -g]))
    return st.lists(nz, max_size=max_size)


def words(ngens: int, max_size: int = 12):
    return letters(ngens, max_size).map(FreeWord.from_letters)


@st.composite
def presentations(draw, max_gens: int = 3, max_rels: int = 3, max_len: int = 8):
    n = draw(st.integers(1, max_gens))
    rels = draw(st.lists(words(n, max_len), max_size=max_rels))
    return Presentation(tuple(f"g{i}" for i in range(n)), tuple(rels))
