import json
import logging
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .errors import ModelError
from .schemas import ActionDescription, Literal

logger = logging.getLogger(__name__)


class LabeledAtom(BaseModel):
    model_config = ConfigDict(frozen=True)

    time: int = Field(..., ge=0)
    literal: Literal

    def __str__(self) -> str:
        return f"{self.time}:{self.literal}"


class Rule(BaseModel):
    """`head :- pos, not naf, not not nnaf.`; a missing head makes the rule a constraint."""

    model_config = ConfigDict(frozen=True)

    head: Optional[LabeledAtom] = None
    pos: Tuple[LabeledAtom, ...] = ()
    naf: Tuple[LabeledAtom, ...] = ()
    nnaf: Tuple[LabeledAtom, ...] = ()

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_positive(self) -> bool:
        return not self.naf and not self.nnaf

    def body_atoms(self) -> Tuple[LabeledAtom, ...]:
        return self.pos + self.naf + self.nnaf

    def __str__(self) -> str:
        body = [str(a) for a in self.pos]
        body += [f"not {a}" for a in self.naf]
        body += [f"not not {a}" for a in self.nnaf]
        head = str(self.head) if self.head is not None else ""
        if not body:
            return f"{head}."
        return f"{head} :- {', '.join(body)}." if head else f":- {', '.join(body)}."


class LogicProgram(BaseModel):
    model_config = ConfigDict(frozen=True)

    horizon: int = Field(default=0, ge=0)
    atoms: Tuple[LabeledAtom, ...] = ()
    rules: Tuple[Rule, ...] = ()
    exactly_one_groups: Tuple[Tuple[LabeledAtom, LabeledAtom], ...] = ()
    # time-0 regular fluent pairs and action atoms: the search's guess layer
    choice_groups: Tuple[Tuple[LabeledAtom, LabeledAtom], ...] = ()
    action_atoms: Tuple[LabeledAtom, ...] = ()

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "atoms": [str(a) for a in self.atoms],
            "rules": [
                {
                    "head": str(r.head) if r.head is not None else None,
                    "pos": [str(a) for a in r.pos],
                    "naf": [str(a) for a in r.naf],
                    "nnaf": [str(a) for a in r.nnaf],
                }
                for r in self.rules
            ],
            "exactly_one": [[str(a), str(b)] for a, b in self.exactly_one_groups],
        }


def _at(time: int, lit: Literal) -> LabeledAtom:
    return LabeledAtom(time=time, literal=lit)


def _pair(time: int, symbol: str) -> Tuple[LabeledAtom, LabeledAtom]:
    return (_at(time, Literal(symbol=symbol)), _at(time, Literal(symbol=symbol, positive=False)))


def translate(desc: ActionDescription, horizon: int) -> LogicProgram:
    """Build the program whose stable models are the paths of length `horizon`."""
    if horizon < 0:
        raise ModelError(f"horizon must be non-negative, got {horizon}")
    sig = desc.signature
    fluents = sig.fluent_symbols
    actions = sig.action_symbols

    atoms: List[LabeledAtom] = []
    for i in range(horizon + 1):
        for f in fluents:
            atoms.extend(_pair(i, f))
        if i < horizon:
            for a in actions:
                atoms.extend(_pair(i, a))

    rules: List[Rule] = []
    for law in desc.statics:
        for i in range(horizon + 1):
            rules.append(Rule(
                head=_at(i, law.head),
                pos=tuple(_at(i, lit) for lit in law.if_part),
                nnaf=tuple(_at(i, lit) for lit in law.ifcons_part),
            ))
    for law in desc.dynamics:
        for i in range(horizon):
            rules.append(Rule(
                head=_at(i + 1, law.head),
                pos=tuple(_at(i, lit) for lit in law.after_part),
                nnaf=tuple(_at(i + 1, lit) for lit in law.ifcons_part),
            ))

    choice_groups = []
    for f in sig.regular_fluents:
        pair = _pair(0, f)
        choice_groups.append(pair)
        for atom in pair:
            rules.append(Rule(head=atom, nnaf=(atom,)))

    action_atoms = []
    for i in range(horizon):
        for a in actions:
            atom = _at(i, Literal(symbol=a))
            action_atoms.append(atom)
            rules.append(Rule(head=atom, nnaf=(atom,)))

    groups = []
    for i in range(horizon + 1):
        for f in fluents:
            pos, neg = _pair(i, f)
            groups.append((pos, neg))
            rules.append(Rule(pos=(pos, neg)))
            rules.append(Rule(naf=(pos, neg)))

    for i in range(horizon):
        for a in actions:
            pos, neg = _pair(i, a)
            rules.append(Rule(head=neg, naf=(pos,)))

    program = LogicProgram(
        horizon=horizon,
        atoms=tuple(atoms),
        rules=tuple(rules),
        exactly_one_groups=tuple(groups),
        choice_groups=tuple(choice_groups),
        action_atoms=tuple(action_atoms),
    )
    logger.debug(f"Translated description at horizon {horizon}: {len(rules)} rules over {len(atoms)} atoms")
    return program


def emit_text(program: LogicProgram) -> str:
    lines = [f"% logic program, horizon {program.horizon}: "
             f"{len(program.rules)} rules over {len(program.atoms)} atoms"]
    lines.extend(str(rule) for rule in program.rules)
    return "\n".join(lines) + "\n"


def emit_json(program: LogicProgram) -> str:
    return json.dumps(program.to_dict(), indent=2)
