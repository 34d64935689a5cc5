import itertools
import json
import logging
import random
from collections import deque
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .config import get_settings
from .errors import CompositionError, ResolutionError
from .model import format_law
from .schemas import (
    ActionDescription,
    DynamicLaw,
    FluentDecl,
    FluentKind,
    LawOrigin,
    Literal,
    Signature,
    StaticLaw,
    ab_symbol,
    is_ab_prime_symbol,
)
from .transitions import CompoundAction, Reasoner, State

logger = logging.getLogger(__name__)


class AbPolicy(str, Enum):
    HEAD = "head"
    LAW = "law"


class AbKind(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"


class AbKey(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: AbKind
    key: str

    @classmethod
    def for_law(cls, law, policy: AbPolicy = AbPolicy.HEAD) -> "AbKey":
        if isinstance(law, StaticLaw):
            per_law = policy == AbPolicy.LAW or law.origin == LawOrigin.IMPOSSIBLE
            return cls(kind=AbKind.STATIC, key=law.law_id if per_law else str(law.head))
        per_law = policy == AbPolicy.LAW or law.origin == LawOrigin.NONEXECUTABLE
        return cls(kind=AbKind.DYNAMIC, key=law.law_id if per_law else str(law.head))

    @property
    def symbol(self) -> str:
        return ab_symbol(self.key, prime=self.kind == AbKind.DYNAMIC)

    @property
    def fluent_kind(self) -> FluentKind:
        return FluentKind.DEFINED if self.kind == AbKind.STATIC else FluentKind.REGULAR


def _negated(symbol: str) -> Literal:
    return Literal(symbol=symbol, positive=False)


def _default_false(symbol: str) -> StaticLaw:
    off = _negated(symbol)
    return StaticLaw(head=off, ifcons_part=(off,), groups=(symbol,), origin=LawOrigin.DEFAULT)


def tau(desc: ActionDescription, policy: AbPolicy = AbPolicy.HEAD) -> ActionDescription:
    """Make every static law defeasible by a defined abnormality fluent that is false by default."""
    statics: List[StaticLaw] = []
    introduced: Dict[str, FluentDecl] = {}
    for law in desc.statics:
        if law.frame:
            statics.append(law)
            continue
        key = AbKey.for_law(law, policy)
        introduced[key.symbol] = FluentDecl(kind=FluentKind.DEFINED)
        statics.append(law.model_copy(update={"ifcons_part": law.ifcons_part + (_negated(key.symbol),)}))
    statics.extend(_default_false(symbol) for symbol in sorted(introduced))
    return ActionDescription.build(desc.signature.extend(fluents=introduced), statics, desc.dynamics)


def beta(desc: ActionDescription, policy: AbPolicy = AbPolicy.HEAD) -> ActionDescription:
    """Make every dynamic law defeasible by a regular abnormality fluent that is false by default."""
    dynamics: List[DynamicLaw] = []
    introduced: Dict[str, FluentDecl] = {}
    for law in desc.dynamics:
        key = AbKey.for_law(law, policy)
        introduced[key.symbol] = FluentDecl(kind=FluentKind.REGULAR)
        dynamics.append(law.model_copy(update={"ifcons_part": law.ifcons_part + (_negated(key.symbol),)}))
    statics = list(desc.statics) + [_default_false(symbol) for symbol in sorted(introduced)]
    return ActionDescription.build(desc.signature.extend(fluents=introduced), statics, dynamics)


def ab_prime_fluents(desc: ActionDescription) -> List[str]:
    return [f for f in desc.signature.fluent_symbols if is_ab_prime_symbol(f)]


def ab_extensions(primes: Sequence[str], limit: int, rng: random.Random) -> List[Tuple[Literal, ...]]:
    """Every assignment to `primes`, or the all-false, the all-true and random ones up to `limit`."""
    if 2 ** len(primes) <= limit:
        return [tuple(Literal(symbol=p, positive=v) for p, v in zip(primes, values))
                for values in itertools.product((False, True), repeat=len(primes))]
    picks = {tuple([False] * len(primes)), tuple([True] * len(primes))}
    while len(picks) < limit:
        picks.add(tuple(rng.random() < 0.5 for _ in primes))
    return [tuple(Literal(symbol=p, positive=v) for p, v in zip(primes, values)) for values in sorted(picks)]


class MasSpec(BaseModel):
    agents: Dict[str, ActionDescription] = Field(default_factory=dict)
    conflict: ActionDescription = Field(default_factory=ActionDescription)
    resolution: ActionDescription = Field(default_factory=ActionDescription)
    policy: AbPolicy = AbPolicy.HEAD


def check_agent_actions(agents: Dict[str, ActionDescription]) -> None:
    owners: Dict[str, str] = {}
    for agent_id in sorted(agents):
        for action in agents[agent_id].signature.action_symbols:
            if action in owners:
                raise CompositionError(
                    f"action {action} belongs to both agent {owners[action]} and agent {agent_id}")
            owners[action] = agent_id


def compose_union(spec: MasSpec) -> ActionDescription:
    check_agent_actions(spec.agents)
    union = ActionDescription()
    for agent_id in sorted(spec.agents):
        union = union.union(tau(spec.agents[agent_id], spec.policy))
    union = union.union(spec.conflict)
    logger.info(f"Composed union of {len(spec.agents)} agents: "
                f"{len(union.statics)} static and {len(union.dynamics)} dynamic laws")
    return union


def compose_global(union: ActionDescription, resolution: ActionDescription,
                   policy: AbPolicy = AbPolicy.HEAD) -> ActionDescription:
    defeasible = beta(union, policy)
    known = set(ab_prime_fluents(defeasible))
    unknown = sorted(s for s in resolution.used_symbols() if is_ab_prime_symbol(s) and s not in known)
    if unknown:
        raise CompositionError(f"resolution laws use unknown abnormality fluents: {', '.join(unknown)}")
    result = defeasible.union(resolution)
    logger.info(f"Composed global view with {len(resolution.laws)} resolution laws")
    return result


# potential conflicts

def compound_actions(actions: Sequence[str], size_bound: Optional[int] = None) -> List[CompoundAction]:
    actions = sorted(actions)
    top = len(actions) if size_bound is None else min(size_bound, len(actions))
    return [frozenset(combo) for k in range(top + 1) for combo in itertools.combinations(actions, k)]


def _action_text(actions: Iterable[str]) -> str:
    return "{" + ", ".join(sorted(actions)) + "}"


class StateConflicts(BaseModel):
    model_config = ConfigDict(frozen=True)

    state: State
    conflicts: Tuple[CompoundAction, ...] = ()


class ConflictReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    size_bound: Optional[int] = None
    entries: Tuple[StateConflicts, ...] = ()

    def conflicts_at(self, state: State) -> Tuple[CompoundAction, ...]:
        for entry in self.entries:
            if entry.state == state:
                return entry.conflicts
        return ()

    def states_with(self, actions: Iterable[str]) -> List[State]:
        wanted = frozenset(actions)
        return [e.state for e in self.entries if wanted in e.conflicts]

    def to_json(self) -> str:
        payload = {
            "size_bound": self.size_bound,
            "states": [
                {"state": [str(lit) for lit in e.state.literals],
                 "conflicts": [sorted(c) for c in e.conflicts]}
                for e in self.entries
            ],
        }
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        lines = []
        for i, entry in enumerate(self.entries, start=1):
            lines.append(f"s{i} {entry.state}")
            for c in entry.conflicts:
                lines.append(f"    {_action_text(c)}")
        return "\n".join(lines) + ("\n" if lines else "")


def potential_conflicts(desc: ActionDescription, size_bound: Optional[int] = None,
                        reasoner: Optional[Reasoner] = None) -> ConflictReport:
    """Compound actions without any successor, per state."""
    reasoner = reasoner or Reasoner(desc)
    ts = reasoner.transitions()
    candidates = compound_actions(desc.signature.action_symbols, size_bound)
    executable: Dict[State, set] = {s: set() for s in ts.states}
    for t in ts.transitions:
        executable[t.source].add(t.actions)
    entries = [
        StateConflicts(state=s, conflicts=tuple(c for c in candidates if c not in executable[s]))
        for s in ts.states
    ]
    report = ConflictReport(size_bound=size_bound, entries=tuple(entries))
    logger.info(f"Found {sum(len(e.conflicts) for e in entries)} potential conflicts over {len(entries)} states")
    return report


# covered laws

def is_covered(law: DynamicLaw, actions: Iterable[str], state: State,
               signature: Optional[Signature] = None) -> bool:
    """
    A law is covered by `actions` at `state` when every positive action of its
    after part is performed, no negated action is, and every fluent literal
    holds in `state`. Without a signature, symbols that `state` does not assign
    are taken to be actions.
    """
    performed = set(actions)
    for lit in law.after_part:
        value = state.value(lit.symbol)
        is_fluent = signature.is_fluent(lit.symbol) if signature is not None else value is not None
        if is_fluent:
            if value is None and signature is not None and signature.fluents[lit.symbol].auxiliary:
                value = False
            if value != lit.positive:
                return False
        elif (lit.symbol in performed) != lit.positive:
            return False
    return True


def covered_laws(desc: ActionDescription, actions: Iterable[str], state: State) -> List[DynamicLaw]:
    actions = set(actions)
    return [law for law in desc.dynamics if is_covered(law, actions, state, desc.signature)]


# automatic resolution

class ResolutionSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    laws: Tuple[DynamicLaw, ...] = ()
    d: Tuple[Literal, ...] = ()
    actions: CompoundAction = frozenset()
    source: State = Field(default_factory=State)
    target: State = Field(default_factory=State)

    def defeated(self) -> List[str]:
        return [lit.symbol for lit in self.d if lit.positive]

    def to_bc(self) -> str:
        lines = [
            f"% resolution of {_action_text(self.actions)} at {self.source}",
            f"% successor {self.target}",
        ]
        lines.extend(format_law(law) for law in self.laws)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "actions": sorted(self.actions),
            "source": [str(lit) for lit in self.source.literals],
            "target": [str(lit) for lit in self.target.literals],
            "laws": [format_law(law) for law in self.laws],
            "d": [str(lit) for lit in self.d],
        }
        return json.dumps(payload, indent=2)


def auto_resolve(desc: ActionDescription, actions: Iterable[str], state: State, target: State,
                 policy: AbPolicy = AbPolicy.HEAD, reasoner: Optional[Reasoner] = None,
                 max_extensions: Optional[int] = None, seed: int = 0) -> ResolutionSet:
    """
    Build resolution laws that turn the potential conflict `actions` at `state`
    into a transition to `target`: one defeater per covered dynamic law and one
    causing law per regular literal of `target`, all with the body that is
    exactly the performed actions, the unperformed ones negated, and `state`.
    The result is checked against the global view before it is returned, see
    `verify_resolution`.
    """
    actions = frozenset(actions)
    reasoner = reasoner or Reasoner(desc)
    sig = desc.signature
    if not reasoner.is_state(state.literals):
        raise ResolutionError(f"{state} is not a state of the description")
    if not reasoner.is_state(target.literals):
        raise ResolutionError(f"target {target} is not a state of the description")
    if reasoner.has_transition(state, actions):
        raise ResolutionError(f"{_action_text(actions)} is executable at {state}: nothing to resolve")

    body = (tuple(Literal(symbol=a) for a in sorted(actions))
            + tuple(Literal(symbol=a, positive=False) for a in sig.action_symbols if a not in actions)
            + state.literals)

    defeasible = beta(desc, policy)
    keys = sorted({AbKey.for_law(law, policy).symbol for law in covered_laws(desc, actions, state)})
    laws: List[DynamicLaw] = []
    for i, symbol in enumerate(keys, start=1):
        laws.append(DynamicLaw(head=Literal(symbol=symbol), after_part=body, groups=(f"defeat{i}",)))
    successors = [lit for lit in target.literals if sig.is_regular(lit.symbol)]
    for i, lit in enumerate(successors, start=1):
        laws.append(DynamicLaw(head=lit, after_part=body, groups=(f"cause{i}",)))

    primes = ab_prime_fluents(defeasible)
    d = tuple(Literal(symbol=p, positive=p in keys) for p in primes)
    resolution = ResolutionSet(laws=tuple(laws), d=d, actions=actions, source=state, target=target)
    verify_resolution(desc, resolution, policy, max_extensions=max_extensions, seed=seed,
                      max_candidates=reasoner.max_candidates)
    logger.info(f"Resolved {_action_text(actions)} at {state} with {len(laws)} laws")
    return resolution


def verify_resolution(desc: ActionDescription, resolution: ResolutionSet, policy: AbPolicy = AbPolicy.HEAD,
                      max_extensions: Optional[int] = None, seed: int = 0,
                      max_candidates: Optional[int] = None) -> int:
    """
    Check that the global view of `desc` with the resolution laws has the
    transition from every ab' extension of the source state that is a state
    to the target with `d`. Past `max_extensions` extensions a seeded sample
    is checked instead. Returns the number of extensions verified.
    """
    defeasible = beta(desc, policy)
    resolved = defeasible.union(ActionDescription.build(defeasible.signature, (), resolution.laws))
    checker = Reasoner(resolved, max_candidates=max_candidates)
    goal = resolution.target.extend(resolution.d)
    limit = max_extensions or get_settings().max_extensions
    verified = 0
    for extension in ab_extensions(ab_prime_fluents(defeasible), limit, random.Random(seed)):
        extended = resolution.source.extend(extension)
        if not checker.is_state(extended.literals):
            continue
        if not checker.has_transition(extended, resolution.actions, goal):
            raise ResolutionError(f"resolution failed to verify: no transition "
                                  f"<{extended}, {_action_text(resolution.actions)}, {goal}>")
        verified += 1
    if not verified:
        raise ResolutionError(f"no abnormality extension of {resolution.source} is a state of the global view")
    logger.debug(f"Verified resolution of {_action_text(resolution.actions)} at {verified} extensions")
    return verified


# reachability in the global view

class ReachabilityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    initial: Tuple[State, ...] = ()
    reachable: Tuple[State, ...] = ()
    transitions: int = 0
    complete: bool = True

    def contains(self, state: State) -> bool:
        return state in self.reachable

    def abnormal(self) -> List[State]:
        return [s for s in self.reachable if any(is_ab_prime_symbol(p) for p in s.positives())]

    def to_text(self) -> str:
        lines = [f"initial states: {len(self.initial)}",
                 f"reachable states: {len(self.reachable)}"
                 + ("" if self.complete else " (exploration stopped at the state limit)"),
                 f"reachable states with abnormality: {len(self.abnormal())}"]
        lines.extend(f"  {s}" for s in self.abnormal())
        return "\n".join(lines) + "\n"


def explore_global(global_view: ActionDescription, union: ActionDescription,
                   max_states: int = 10000, reasoner: Optional[Reasoner] = None) -> Tuple[ReachabilityReport, nx.DiGraph]:
    """Breadth-first exploration of the global view from the union's states with every ab' false."""
    reasoner = reasoner or Reasoner(global_view)
    primes = ab_prime_fluents(global_view)
    sound = [_negated(p) for p in primes]
    initial = [s.extend(sound) for s in Reasoner(union, max_candidates=reasoner.max_candidates).states()]
    initial = [s for s in initial if reasoner.is_state(s.literals)]

    graph = nx.DiGraph()
    queue = deque(initial)
    for s in initial:
        graph.add_node(s)
    edges = 0
    complete = True
    while queue:
        state = queue.popleft()
        for t in reasoner.successors(state):
            edges += 1
            if t.target not in graph:
                if graph.number_of_nodes() >= max_states:
                    complete = False
                    continue
                graph.add_node(t.target)
                queue.append(t.target)
            actions = graph.edges[state, t.target]["actions"] if graph.has_edge(state, t.target) else []
            graph.add_edge(state, t.target, actions=sorted(actions + [sorted(t.actions)]))
    reachable = sorted(graph.nodes, key=lambda s: s.sort_key)
    report = ReachabilityReport(initial=tuple(initial), reachable=tuple(reachable),
                                transitions=edges, complete=complete)
    logger.info(f"Explored {len(reachable)} reachable states of the global view")
    return report, graph


def is_superfluous(global_view: ActionDescription, state: State, report: ReachabilityReport,
                   reasoner: Optional[Reasoner] = None) -> bool:
    """A state of the global view holding some ab' that exploration from sound states never reaches."""
    reasoner = reasoner or Reasoner(global_view)
    if not any(is_ab_prime_symbol(p) for p in state.positives()):
        return False
    return reasoner.is_state(state.literals) and report.complete and not report.contains(state)
