"""Empirical checkers for how abnormality fluents and covered laws preserve transitions."""
import logging
import random
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field

from .composer import AbPolicy, ab_extensions, ab_prime_fluents, beta, compound_actions, covered_laws
from .config import get_settings
from .model import expand_abbreviations
from .schemas import (
    AbbreviationKind,
    AbbreviationLaw,
    ActionDescription,
    DynamicLaw,
    FluentDecl,
    FluentKind,
    Literal,
    Signature,
    StaticLaw,
)
from .transitions import CompoundAction, Reasoner, State

logger = logging.getLogger(__name__)

Sample = Tuple[CompoundAction, State]


class PropertyReport(BaseModel):
    name: str
    checked: int = 0
    skipped: int = 0
    counterexamples: List[str] = Field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "PropertyReport") -> "PropertyReport":
        return PropertyReport(name=self.name, checked=self.checked + other.checked,
                              skipped=self.skipped + other.skipped,
                              counterexamples=self.counterexamples + other.counterexamples)

    def to_text(self) -> str:
        verdict = "holds" if self.holds else f"FAILS ({len(self.counterexamples)} counterexamples)"
        lines = [f"{self.name}: {verdict}; {self.checked} checks, {self.skipped} skipped"]
        lines.extend(f"  {c}" for c in self.counterexamples)
        return "\n".join(lines) + "\n"


def _actions_text(actions: Iterable[str]) -> str:
    return "{" + ", ".join(sorted(actions)) + "}"


def check_lemma1(desc: ActionDescription, samples: Optional[Iterable[Sample]] = None,
                 policy: AbPolicy = AbPolicy.HEAD, seed: int = 0,
                 max_extensions: Optional[int] = None) -> PropertyReport:
    """
    For each sampled (c, s): c is a potential conflict at s exactly when it is one
    at every extension of s by ab' literals that is a state of beta(desc).
    """
    limit = max_extensions or get_settings().max_extensions
    rng = random.Random(seed)
    reasoner = Reasoner(desc)
    ts = reasoner.transitions()
    executable: Dict[State, set] = {s: set() for s in ts.states}
    for t in ts.transitions:
        executable[t.source].add(t.actions)

    if samples is None:
        candidates = compound_actions(desc.signature.action_symbols)
        samples = [(c, s) for s in ts.states for c in candidates]
    by_state: Dict[State, List[CompoundAction]] = {}
    for c, s in samples:
        by_state.setdefault(s, []).append(frozenset(c))

    defeasible = beta(desc, policy)
    checker = Reasoner(defeasible)
    primes = ab_prime_fluents(defeasible)
    report = PropertyReport(name="conflicts preserved under beta")

    for s in sorted(by_state, key=lambda st: st.sort_key):
        if s not in executable:
            report.counterexamples.append(f"{s} is not a state of the description")
            continue
        for extension in ab_extensions(primes, limit, rng):
            extended = s.extend(extension)
            if not checker.is_state(extended.literals):
                report.skipped += 1
                continue
            after = {t.actions for t in checker.successors(extended)}
            for c in by_state[s]:
                report.checked += 1
                before_conflict = c not in executable[s]
                after_conflict = c not in after
                if before_conflict != after_conflict:
                    report.counterexamples.append(
                        f"{_actions_text(c)} at {s}: conflict={before_conflict}, "
                        f"at extension {extended}: conflict={after_conflict}")
    logger.info(f"Conflict preservation check: {report.checked} checks, {len(report.counterexamples)} counterexamples")
    return report


def restrict_to_covered(desc: ActionDescription, actions: Iterable[str], state: State) -> ActionDescription:
    return ActionDescription.build(desc.signature, desc.statics, covered_laws(desc, actions, state))


def check_lemma2(desc: ActionDescription, samples: Optional[Iterable[Sample]] = None) -> PropertyReport:
    """For each sampled (c, s): dropping the dynamic laws not covered by c at s keeps the successors of s under c."""
    reasoner = Reasoner(desc)
    ts = reasoner.transitions()
    successors: Dict[Tuple[State, CompoundAction], set] = {}
    for t in ts.transitions:
        successors.setdefault((t.source, t.actions), set()).add(t.target)
    if samples is None:
        candidates = compound_actions(desc.signature.action_symbols)
        samples = [(c, s) for s in ts.states for c in candidates]

    restricted: Dict[frozenset, Reasoner] = {}
    report = PropertyReport(name="transitions preserved by covered laws")
    for c, s in samples:
        c = frozenset(c)
        reduced = restrict_to_covered(desc, c, s)
        key = frozenset(law.structure for law in reduced.dynamics)
        if key not in restricted:
            restricted[key] = Reasoner(reduced)
        after = {t.target for t in restricted[key].successors(s, c)}
        before = successors.get((s, c), set())
        report.checked += 1
        if before != after:
            lost = sorted(str(x) for x in before - after)
            gained = sorted(str(x) for x in after - before)
            report.counterexamples.append(
                f"{_actions_text(c)} at {s}: lost {lost}, gained {gained}")
    logger.info(f"Covered law check: {report.checked} checks, {len(report.counterexamples)} counterexamples")
    return report


def random_description(seed: int, max_fluents: int = 3, max_actions: int = 2,
                       max_laws: int = 6) -> ActionDescription:
    """A small random description over regular fluents with every fluent inertial."""
    rng = random.Random(seed)
    fluents = [f"f{i}" for i in range(1, rng.randint(1, max_fluents) + 1)]
    actions = [f"a{i}" for i in range(1, rng.randint(1, max_actions) + 1)]
    signature = Signature(fluents={f: FluentDecl(kind=FluentKind.REGULAR) for f in fluents},
                          actions={a: () for a in actions})

    def fluent_literal() -> Literal:
        return Literal(symbol=rng.choice(fluents), positive=rng.random() < 0.5)

    def action_literal() -> Literal:
        return Literal(symbol=rng.choice(actions), positive=rng.random() < 0.75)

    def distinct(lits: List[Literal]) -> Tuple[Literal, ...]:
        return tuple(dict.fromkeys(lits))

    laws: list = [AbbreviationLaw(kind=AbbreviationKind.INERTIAL, group="inertia",
                                  literals=tuple(Literal(symbol=f) for f in fluents))]
    for index in range(1, rng.randint(0, max_laws - 1) + 1):
        kind = rng.choice(["static", "dynamic", "dynamic", "nonexecutable", "impossible", "default"])
        if kind == "static":
            laws.append(StaticLaw(head=fluent_literal(), groups=(f"law{index}",),
                                  if_part=distinct([fluent_literal() for _ in range(rng.randint(0, 2))])))
        elif kind == "dynamic":
            body = [action_literal()] + [fluent_literal() for _ in range(rng.randint(0, 1))]
            laws.append(DynamicLaw(head=fluent_literal(), after_part=distinct(body), groups=(f"law{index}",)))
        elif kind == "nonexecutable":
            laws.append(AbbreviationLaw(kind=AbbreviationKind.NONEXECUTABLE, group=f"n{index}",
                                        actions=(Literal(symbol=rng.choice(actions)),),
                                        condition=distinct([fluent_literal() for _ in range(rng.randint(0, 1))])))
        elif kind == "impossible":
            laws.append(AbbreviationLaw(kind=AbbreviationKind.IMPOSSIBLE, group=f"imp{index}",
                                        literals=distinct([fluent_literal() for _ in range(rng.randint(1, 2))])))
        else:
            laws.append(AbbreviationLaw(kind=AbbreviationKind.DEFAULT, group=f"law{index}",
                                        literals=(fluent_literal(),)))
    return expand_abbreviations(laws, signature)
