import json
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from .engine import Assumption, Interpretation, StableModelSolver
from .errors import ModelError
from .schemas import ActionDescription, Literal, is_ab_symbol
from .translator import LabeledAtom, LogicProgram, translate

logger = logging.getLogger(__name__)

CompoundAction = FrozenSet[str]


def split_literals(text: str) -> List[str]:
    """Split `a(1,2), -b, c` at top-level commas; surrounding braces are ignored."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    parts, depth, current = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(current.strip())
            current = ""
        else:
            current += ch
    if current.strip():
        parts.append(current.strip())
    return [p for p in parts if p]


class State(BaseModel):
    model_config = ConfigDict(frozen=True)

    literals: Tuple[Literal, ...] = ()

    @classmethod
    def of(cls, literals: Iterable[Literal]) -> "State":
        return cls(literals=tuple(sorted(set(literals), key=lambda lit: lit.sort_key)))

    @classmethod
    def parse(cls, text: str) -> "State":
        return cls.of(Literal.parse(part) for part in split_literals(text))

    @property
    def sort_key(self) -> tuple:
        return tuple(lit.sort_key for lit in self.literals)

    def holds(self, literal: Literal) -> bool:
        return literal in self.literals

    def value(self, symbol: str) -> Optional[bool]:
        for lit in self.literals:
            if lit.symbol == symbol:
                return lit.positive
        return None

    def positives(self) -> List[str]:
        return [lit.symbol for lit in self.literals if lit.positive]

    def symbols(self) -> List[str]:
        return [lit.symbol for lit in self.literals]

    def extend(self, literals: Iterable[Literal]) -> "State":
        return State.of(list(self.literals) + list(literals))

    def without(self, predicate) -> "State":
        return State.of(lit for lit in self.literals if not predicate(lit.symbol))

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self.literals) + "}"


class Transition(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: State
    actions: CompoundAction = frozenset()
    target: State

    @property
    def is_idle_loop(self) -> bool:
        return not self.actions and self.source == self.target

    @property
    def sort_key(self) -> tuple:
        return (self.source.sort_key, len(self.actions), tuple(sorted(self.actions)), self.target.sort_key)

    def __str__(self) -> str:
        return f"<{self.source}, {{{', '.join(sorted(self.actions))}}}, {self.target}>"


class TransitionSystem(BaseModel):
    model_config = ConfigDict(frozen=True)

    states: Tuple[State, ...] = ()
    transitions: Tuple[Transition, ...] = ()

    @classmethod
    def of(cls, states: Iterable[State], transitions: Iterable[Transition]) -> "TransitionSystem":
        return cls(
            states=tuple(sorted(set(states), key=lambda s: s.sort_key)),
            transitions=tuple(sorted(set(transitions), key=lambda t: t.sort_key)),
        )

    def index(self) -> Dict[State, int]:
        return {s: i for i, s in enumerate(self.states)}

    def outgoing(self, state: State) -> List[Transition]:
        return [t for t in self.transitions if t.source == state]

    def to_graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        index = self.index()
        for state, i in index.items():
            graph.add_node(i, state=state)
        for t in self.transitions:
            graph.add_edge(index[t.source], index[t.target], actions=t.actions)
        return graph


def _assume_state(literals: Iterable[Literal], time: int = 0) -> List[Assumption]:
    return [(LabeledAtom(time=time, literal=lit), True) for lit in literals]


class Reasoner:
    """Queries over one description; programs for horizons 0 and 1 are translated and compiled once."""

    def __init__(self, desc: ActionDescription, max_candidates: Optional[int] = None):
        self.desc = desc
        self.max_candidates = max_candidates
        self.visible = set(desc.signature.visible_fluents)
        self.actions = desc.signature.action_symbols
        self._solvers: Dict[int, StableModelSolver] = {}

    def program(self, horizon: int) -> LogicProgram:
        return self.solver(horizon).program

    def solver(self, horizon: int) -> StableModelSolver:
        if horizon not in self._solvers:
            self._solvers[horizon] = StableModelSolver(translate(self.desc, horizon),
                                                       max_candidates=self.max_candidates)
        return self._solvers[horizon]

    def project(self, model: Interpretation, time: int) -> State:
        return State.of(a.literal for a in model
                        if a.time == time and a.literal.symbol in self.visible)

    def performed(self, model: Interpretation, time: int = 0) -> CompoundAction:
        return frozenset(a.literal.symbol for a in model
                         if a.time == time and a.literal.positive and a.literal.symbol in self.desc.signature.actions)

    def _transition(self, model: Interpretation) -> Transition:
        return Transition(source=self.project(model, 0), actions=self.performed(model),
                          target=self.project(model, 1))

    def _assume_actions(self, actions: Iterable[str]) -> List[Assumption]:
        chosen = set(actions)
        unknown = sorted(chosen - set(self.actions))
        if unknown:
            raise ModelError(f"unknown actions: {', '.join(unknown)}")
        return [(LabeledAtom(time=0, literal=Literal(symbol=a)), a in chosen) for a in self.actions]

    def _check_literals(self, literals: Iterable[Literal]) -> List[Literal]:
        literals = list(literals)
        for lit in literals:
            if not self.desc.signature.is_fluent(lit.symbol):
                raise ModelError(f"unknown fluent {lit.symbol}")
        return literals

    def states(self) -> List[State]:
        found = {self.project(m, 0) for m in self.solver(0).solve()}
        return sorted(found, key=lambda s: s.sort_key)

    def transitions(self) -> TransitionSystem:
        found = {self._transition(m) for m in self.solver(1).solve()}
        ts = TransitionSystem.of(self.states(), found)
        logger.info(f"Computed {len(ts.states)} states and {len(ts.transitions)} transitions")
        return ts

    def is_state(self, literals: Iterable[Literal]) -> bool:
        assumptions = _assume_state(self._check_literals(literals))
        return next(self.solver(0).solve(assumptions, limit=1), None) is not None

    def matching_states(self, literals: Iterable[Literal], limit: Optional[int] = None) -> List[State]:
        assumptions = _assume_state(self._check_literals(literals))
        found = {self.project(m, 0) for m in self.solver(0).solve(assumptions, limit=limit)}
        return sorted(found, key=lambda s: s.sort_key)

    def complete_state(self, literals: Iterable[Literal]) -> State:
        """The one state containing `literals`; a partial state must not be ambiguous."""
        literals = list(literals)
        matches = self.matching_states(literals, limit=2)
        if not matches:
            raise ModelError(f"no state contains {State.of(literals)}")
        if len(matches) > 1:
            raise ModelError(f"{State.of(literals)} matches more than one state, e.g. {matches[0]} and {matches[1]}")
        return matches[0]

    def successors(self, state: State, actions: Optional[Iterable[str]] = None) -> List[Transition]:
        assumptions = _assume_state(self._check_literals(state.literals))
        if actions is not None:
            assumptions += self._assume_actions(actions)
        found = {self._transition(m) for m in self.solver(1).solve(assumptions)}
        return sorted(found, key=lambda t: t.sort_key)

    def has_transition(self, source: State, actions: Iterable[str], target: Optional[State] = None) -> bool:
        assumptions = _assume_state(self._check_literals(source.literals))
        assumptions += self._assume_actions(actions)
        if target is not None:
            assumptions += _assume_state(self._check_literals(target.literals), time=1)
        return next(self.solver(1).solve(assumptions, limit=1), None) is not None

    def executable(self, state: State) -> List[CompoundAction]:
        return sorted({t.actions for t in self.successors(state)}, key=lambda c: (len(c), sorted(c)))


def states(desc: ActionDescription) -> List[State]:
    return Reasoner(desc).states()


def transitions(desc: ActionDescription) -> TransitionSystem:
    return Reasoner(desc).transitions()


def is_state(desc: ActionDescription, literals: Iterable[Literal]) -> bool:
    return Reasoner(desc).is_state(literals)


def successors(desc: ActionDescription, state: State, actions: Optional[Iterable[str]] = None) -> List[Transition]:
    return Reasoner(desc).successors(state, actions)


def has_transition(desc: ActionDescription, source: State, actions: Iterable[str],
                   target: Optional[State] = None) -> bool:
    return Reasoner(desc).has_transition(source, actions, target)


# export

def _dot_label(lines: Iterable[str]) -> str:
    """One quoted DOT label, a line per entry."""
    escaped = (line.replace("\\", "\\\\").replace('"', r'\"') for line in lines)
    return '"' + r"\n".join(escaped) + '"'


def _node_label(state: State, show_negatives: bool, show_ab: bool) -> str:
    shown = [lit for lit in state.literals
             if (lit.positive or show_negatives) and (show_ab or not is_ab_symbol(lit.symbol))]
    return _dot_label(str(lit) for lit in shown)


def export_dot(ts: TransitionSystem, show_negatives: bool = False, show_ab: bool = False,
               show_idle_loops: bool = False) -> str:
    """Render as a DOT digraph; empty-action self-loops are left out unless asked for."""
    lines = ["digraph transitions {"]
    index = ts.index()
    if ts.states:
        lines.append("  node [shape=box];")
    for state, i in index.items():
        lines.append(f"  s{i + 1} [label={_node_label(state, show_negatives, show_ab)}];")
    for t in ts.transitions:
        if t.is_idle_loop and not show_idle_loops:
            continue
        label = ", ".join(sorted(t.actions))
        lines.append(f"  s{index[t.source] + 1} -> s{index[t.target] + 1} [label={_dot_label([label])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(ts: TransitionSystem) -> str:
    index = ts.index()
    payload = {
        "states": [[str(lit) for lit in s.literals] for s in ts.states],
        "transitions": [
            {"from": index[t.source], "actions": sorted(t.actions), "to": index[t.target]}
            for t in ts.transitions
        ],
    }
    return json.dumps(payload, indent=2)


def read_json(text: str) -> TransitionSystem:
    payload = json.loads(text)
    states = [State.of(Literal.parse(lit) for lit in lits) for lits in payload["states"]]
    transitions = [
        Transition(source=states[t["from"]], actions=frozenset(t["actions"]), target=states[t["to"]])
        for t in payload["transitions"]
    ]
    return TransitionSystem.of(states, transitions)
