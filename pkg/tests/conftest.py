from pathlib import Path
from typing import List

import pytest

from bcmas.app.schemas import Literal
from bcmas.app.transitions import Reasoner, State
from bcmas.app.workflow import CompositionWorkflow, load_description

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def lits(*texts: str) -> List[Literal]:
    return [Literal.parse(t) for t in texts]


def state_with(reasoner: Reasoner, *texts: str) -> State:
    """The unique state of `reasoner` containing the given literals."""
    return reasoner.complete_state(lits(*texts))


@pytest.fixture(scope="session")
def corpus() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def sumo1():
    return load_description(CORPUS / "sumo_agent.bc")


@pytest.fixture(scope="session")
def sumo_union():
    return CompositionWorkflow().run(CORPUS / "sumo_union.toml").description


@pytest.fixture(scope="session")
def sumo_global_result():
    return CompositionWorkflow().run(CORPUS / "sumo_global.toml")


@pytest.fixture(scope="session")
def sumo_union_reasoner(sumo_union):
    return Reasoner(sumo_union)


@pytest.fixture(scope="session")
def sumo_union_ts(sumo_union_reasoner):
    return sumo_union_reasoner.transitions()


@pytest.fixture(scope="session")
def sumo_global_reasoner(sumo_global_result):
    return Reasoner(sumo_global_result.global_view)


@pytest.fixture(scope="session")
def table_left():
    return load_description(CORPUS / "table_left.bc")


@pytest.fixture(scope="session")
def table_union():
    return CompositionWorkflow().run(CORPUS / "table_union.toml").description


@pytest.fixture(scope="session")
def table_global_result():
    return CompositionWorkflow().run(CORPUS / "table_global.toml")


@pytest.fixture
def ring_states(sumo_union_reasoner):
    """The six states drawn in the two-wrestler transition diagram."""
    positions = {
        "s1": ("at(a,1)", "at(b,4)"),
        "s2": ("at(a,2)", "at(b,3)"),
        "s3": ("at(a,1)", "at(b,3)"),
        "s4": ("at(a,2)", "at(b,4)"),
        "s5": ("at(a,1)", "at(b,2)"),
        "s6": ("at(a,3)", "at(b,4)"),
    }
    return {name: state_with(sumo_union_reasoner, *p) for name, p in positions.items()}
