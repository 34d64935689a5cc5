"""
Stable model enumeration for the programs built by the translator.

The structured search assigns the guess layer first (time-0 regular fluents,
then actions) and propagates the completion of the program after every
decision: a rule whose body holds fires its head, a false head or a constraint
refutes the last open body literal, and an atom without any possibly-true
support is false. Complete assignments are then checked against the
Gelfond-Lifschitz reduct.
"""
import json
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict

from .config import get_settings
from .errors import ModelError, SolverLimitError
from .translator import LabeledAtom, LogicProgram, Rule

logger = logging.getLogger(__name__)

Interpretation = FrozenSet[LabeledAtom]
Assumption = Tuple[LabeledAtom, bool]

TRUE = 1
FALSE = -1
UNDEF = 0


def _model_key(model: Iterable[LabeledAtom]) -> Tuple[str, ...]:
    return tuple(sorted(str(a) for a in model))


class ModelSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    models: Tuple[Interpretation, ...] = ()

    @classmethod
    def of(cls, models: Iterable[Iterable[LabeledAtom]]) -> "ModelSet":
        unique = {frozenset(m) for m in models}
        return cls(models=tuple(sorted(unique, key=_model_key)))

    def __len__(self) -> int:
        return len(self.models)

    def to_list(self) -> List[List[str]]:
        return [list(_model_key(m)) for m in self.models]

    def to_json(self) -> str:
        return json.dumps(self.to_list(), indent=2)


def _body_true(rule: Rule, x: Set[LabeledAtom]) -> bool:
    return (all(a in x for a in rule.pos)
            and not any(a in x for a in rule.naf)
            and all(a in x for a in rule.nnaf))


def reduct(program: LogicProgram, x: Iterable[LabeledAtom]) -> LogicProgram:
    x = set(x)
    rules = []
    for rule in program.rules:
        if any(a in x for a in rule.naf) or any(a not in x for a in rule.nnaf):
            continue
        rules.append(Rule(head=rule.head, pos=rule.pos))
    return program.model_copy(update={"rules": tuple(rules)})


def least_model(program: LogicProgram) -> Interpretation:
    """Least model of the positive part of `program`; constraints are ignored."""
    model: Set[LabeledAtom] = set()
    changed = True
    while changed:
        changed = False
        for rule in program.rules:
            if rule.head is None or rule.head in model:
                continue
            if all(a in model for a in rule.pos):
                model.add(rule.head)
                changed = True
    return frozenset(model)


def is_stable(program: LogicProgram, x: Iterable[LabeledAtom]) -> bool:
    x = set(x)
    for rule in program.rules:
        if rule.is_constraint and _body_true(rule, x):
            return False
    return least_model(reduct(program, x)) == x


class StableModelSolver:
    """Compiled form of one program; reusable across queries with different assumptions."""

    def __init__(self, program: LogicProgram, max_candidates: Optional[int] = None,
                 naive_atom_limit: Optional[int] = None):
        settings = get_settings()
        self.program = program
        self.max_candidates = max_candidates or settings.max_candidates
        self.naive_atom_limit = naive_atom_limit if naive_atom_limit is not None else settings.naive_atom_limit

        self.atoms: List[LabeledAtom] = list(program.atoms)
        self.index: Dict[LabeledAtom, int] = {a: i for i, a in enumerate(self.atoms)}
        for rule in program.rules:
            for atom in ((rule.head,) if rule.head else ()) + rule.body_atoms():
                if atom not in self.index:
                    self.index[atom] = len(self.atoms)
                    self.atoms.append(atom)
        n = len(self.atoms)

        self.heads: List[int] = []
        self.bodies: List[Tuple[Tuple[int, int], ...]] = []
        self.pos: List[Tuple[int, ...]] = []
        self.naf: List[Tuple[int, ...]] = []
        self.nnaf: List[Tuple[int, ...]] = []
        self.heads_of: List[List[int]] = [[] for _ in range(n)]
        self.occurs: List[List[int]] = [[] for _ in range(n)]
        self.pos_watch: List[List[int]] = [[] for _ in range(n)]
        self.constraints: List[int] = []

        for r, rule in enumerate(program.rules):
            idx = self.index
            head = idx[rule.head] if rule.head is not None else -1
            pos = tuple(idx[a] for a in rule.pos)
            naf = tuple(idx[a] for a in rule.naf)
            nnaf = tuple(idx[a] for a in rule.nnaf)
            self.heads.append(head)
            self.pos.append(tuple(sorted(set(pos))))
            self.naf.append(naf)
            self.nnaf.append(nnaf)
            self.bodies.append(tuple((a, TRUE) for a in pos)
                               + tuple((a, FALSE) for a in naf)
                               + tuple((a, TRUE) for a in nnaf))
            touched = set(pos) | set(naf) | set(nnaf)
            if head >= 0:
                self.heads_of[head].append(r)
                touched.add(head)
            else:
                self.constraints.append(r)
            for a in touched:
                self.occurs[a].append(r)
            for a in set(pos):
                self.pos_watch[a].append(r)

        first = [self.index[pos] for pos, _ in program.choice_groups]
        actions = [self.index[a] for a in program.action_atoms]
        seen: Set[int] = set()
        self.order: List[int] = []
        for a in first + actions + list(range(n)):
            if a not in seen:
                seen.add(a)
                self.order.append(a)

    # propagation

    def _body_false(self, r: int, val: List[int]) -> bool:
        for a, want in self.bodies[r]:
            v = val[a]
            if v != UNDEF and v != want:
                return True
        return False

    def _propagate(self, val: List[int], rules: Iterable[int]) -> bool:
        queue = deque(rules)
        queued = bytearray(len(self.heads))
        for r in queue:
            queued[r] = 1

        def assign(a: int, value: int) -> bool:
            current = val[a]
            if current == value:
                return True
            if current != UNDEF:
                return False
            val[a] = value
            for r in self.occurs[a]:
                if not queued[r]:
                    queued[r] = 1
                    queue.append(r)
            return True

        while queue:
            r = queue.popleft()
            queued[r] = 0
            head = self.heads[r]
            unknown = None
            n_unknown = 0
            falsified = False
            for a, want in self.bodies[r]:
                v = val[a]
                if v == UNDEF:
                    n_unknown += 1
                    unknown = (a, want)
                elif v != want:
                    falsified = True
                    break
            if not falsified:
                if n_unknown == 0:
                    if head < 0 or not assign(head, TRUE):
                        return False
                elif n_unknown == 1 and (head < 0 or val[head] == FALSE):
                    a, want = unknown
                    if not assign(a, -want):
                        return False
            if head >= 0 and val[head] != FALSE:
                support = [s for s in self.heads_of[head] if not self._body_false(s, val)]
                if not support:
                    if not assign(head, FALSE):
                        return False
                elif len(support) == 1 and val[head] == TRUE:
                    for a, want in self.bodies[support[0]]:
                        if not assign(a, want):
                            return False
        return True

    def _initial(self, assumptions: Sequence[Assumption]) -> Optional[List[int]]:
        val = [UNDEF] * len(self.atoms)
        for atom, value in assumptions:
            if atom not in self.index:
                raise ModelError(f"assumption on unknown atom {atom}")
            a = self.index[atom]
            wanted = TRUE if value else FALSE
            if val[a] not in (UNDEF, wanted):
                return None
            val[a] = wanted
        for a, rules in enumerate(self.heads_of):
            if not rules:
                if val[a] == TRUE:
                    return None
                val[a] = FALSE
        if not self._propagate(val, range(len(self.heads))):
            return None
        return val

    # stability

    def _stable(self, val: List[int]) -> bool:
        true = [v == TRUE for v in val]
        for r in self.constraints:
            if all(true[a] == (want == TRUE) for a, want in self.bodies[r]):
                return False
        derived = [False] * len(self.atoms)
        missing = [0] * len(self.heads)
        active = [False] * len(self.heads)
        stack: List[int] = []
        for r, head in enumerate(self.heads):
            if head < 0:
                continue
            if any(true[a] for a in self.naf[r]) or not all(true[a] for a in self.nnaf[r]):
                continue
            active[r] = True
            missing[r] = len(self.pos[r])
            if missing[r] == 0 and not derived[head]:
                derived[head] = True
                stack.append(head)
        while stack:
            a = stack.pop()
            for r in self.pos_watch[a]:
                if not active[r]:
                    continue
                missing[r] -= 1
                head = self.heads[r]
                if missing[r] == 0 and not derived[head]:
                    derived[head] = True
                    stack.append(head)
        return derived == true

    def _model(self, val: List[int]) -> Interpretation:
        return frozenset(self.atoms[a] for a, v in enumerate(val) if v == TRUE)

    # search

    def solve(self, assumptions: Sequence[Assumption] = (), limit: Optional[int] = None) -> Iterator[Interpretation]:
        root = self._initial(assumptions)
        if root is None:
            return
        stack = [root]
        nodes = 0
        found = 0
        while stack:
            val = stack.pop()
            nodes += 1
            if nodes > self.max_candidates:
                raise SolverLimitError(f"search exceeded {self.max_candidates} candidates")
            atom = next((a for a in self.order if val[a] == UNDEF), -1)
            if atom < 0:
                if self._stable(val):
                    found += 1
                    yield self._model(val)
                    if limit is not None and found >= limit:
                        return
                continue
            for value in (FALSE, TRUE):
                child = list(val)
                child[atom] = value
                if self._propagate(child, self.occurs[atom]):
                    stack.append(child)
        logger.debug(f"Search visited {nodes} nodes and found {found} stable models")

    def solve_naive(self, assumptions: Sequence[Assumption] = (), limit: Optional[int] = None) -> Iterator[Interpretation]:
        n = len(self.atoms)
        if n > self.naive_atom_limit:
            raise SolverLimitError(f"naive enumeration refuses {n} atoms (limit {self.naive_atom_limit})")
        fixed = {}
        for atom, value in assumptions:
            if atom not in self.index:
                raise ModelError(f"assumption on unknown atom {atom}")
            fixed[self.index[atom]] = TRUE if value else FALSE
        found = 0
        for mask in range(1 << n):
            val = [TRUE if mask >> i & 1 else FALSE for i in range(n)]
            if any(val[a] != v for a, v in fixed.items()):
                continue
            if self._stable(val):
                found += 1
                yield self._model(val)
                if limit is not None and found >= limit:
                    return


def enumerate_models(program: LogicProgram, assumptions: Sequence[Assumption] = (),
                     limit: Optional[int] = None, naive: bool = False,
                     max_candidates: Optional[int] = None) -> ModelSet:
    solver = StableModelSolver(program, max_candidates=max_candidates)
    found = solver.solve_naive(assumptions, limit) if naive else solver.solve(assumptions, limit)
    models = ModelSet.of(found)
    logger.debug(f"Enumerated {len(models)} stable models at horizon {program.horizon}")
    return models
