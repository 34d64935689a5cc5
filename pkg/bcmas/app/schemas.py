from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import CompositionError, ModelError

AB = "ab"
AB_PRIME = "ab'"


class FluentKind(str, Enum):
    REGULAR = "regular"
    DEFINED = "defined"


class LawOrigin(str, Enum):
    CORE = "core"
    INERTIAL = "inertial"
    DEFAULT = "default"
    IMPOSSIBLE = "impossible"
    NONEXECUTABLE = "nonexecutable"


class AbbreviationKind(str, Enum):
    IMPOSSIBLE = "impossible"
    NONEXECUTABLE = "nonexecutable"
    INERTIAL = "inertial"
    DEFAULT = "default"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Literal(BaseModel):
    """A fluent or action symbol with a sign; `-f` is the negation of f."""

    model_config = ConfigDict(frozen=True)

    symbol: str = Field(..., min_length=1)
    positive: bool = True

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        if text.startswith("-"):
            return cls(symbol=text[1:].strip(), positive=False)
        return cls(symbol=text)

    def complement(self) -> "Literal":
        return Literal(symbol=self.symbol, positive=not self.positive)

    @property
    def sort_key(self) -> Tuple[str, bool]:
        return (self.symbol, not self.positive)

    def __str__(self) -> str:
        return self.symbol if self.positive else f"-{self.symbol}"


def ab_symbol(key: str, prime: bool = False) -> str:
    return f"{AB_PRIME if prime else AB}({key})"


def is_ab_symbol(symbol: str) -> bool:
    return symbol.startswith(AB + "(") or symbol.startswith(AB_PRIME + "(")


def is_ab_prime_symbol(symbol: str) -> bool:
    return symbol.startswith(AB_PRIME + "(")


class StaticLaw(BaseModel):
    model_config = ConfigDict(frozen=True)

    head: Literal
    if_part: Tuple[Literal, ...] = ()
    ifcons_part: Tuple[Literal, ...] = ()
    groups: Tuple[str, ...] = ()
    origin: LawOrigin = LawOrigin.CORE
    # frame laws pin abbreviation-introduced fluents and are never made defeasible
    frame: bool = False

    @property
    def law_id(self) -> str:
        return self.groups[0] if self.groups else ""

    @property
    def structure(self) -> tuple:
        return ("static", self.head, self.if_part, self.ifcons_part, self.frame)

    def literals(self) -> Tuple[Literal, ...]:
        return (self.head,) + self.if_part + self.ifcons_part


class DynamicLaw(BaseModel):
    model_config = ConfigDict(frozen=True)

    head: Literal
    after_part: Tuple[Literal, ...] = ()
    ifcons_part: Tuple[Literal, ...] = ()
    groups: Tuple[str, ...] = ()
    origin: LawOrigin = LawOrigin.CORE

    @property
    def law_id(self) -> str:
        return self.groups[0] if self.groups else ""

    @property
    def structure(self) -> tuple:
        return ("dynamic", self.head, self.after_part, self.ifcons_part)

    def literals(self) -> Tuple[Literal, ...]:
        return (self.head,) + self.after_part + self.ifcons_part


Law = Union[StaticLaw, DynamicLaw]


class AbbreviationLaw(BaseModel):
    """
    impossible F            -> literals = F
    nonexecutable C if F    -> actions = C, condition = F
    inertial f1, ..., fk    -> literals = f1..fk
    default l if F          -> literals = (l,), condition = F
    """

    model_config = ConfigDict(frozen=True)

    kind: AbbreviationKind
    literals: Tuple[Literal, ...] = ()
    actions: Tuple[Literal, ...] = ()
    condition: Tuple[Literal, ...] = ()
    group: str = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_payload(self):
        if self.kind == AbbreviationKind.DEFAULT and len(self.literals) != 1:
            raise ValueError("a default law has exactly one head literal")
        if self.kind == AbbreviationKind.NONEXECUTABLE and not self.actions:
            raise ValueError("a nonexecutable law names at least one action")
        return self


class FluentDecl(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: FluentKind
    auxiliary: bool = False


class Signature(BaseModel):
    """Ground fluent and action symbols; `actions` maps each action to the agents declaring it."""

    model_config = ConfigDict(frozen=True)

    fluents: Dict[str, FluentDecl] = Field(default_factory=dict)
    actions: Dict[str, Tuple[str, ...]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_disjoint(self):
        shared = sorted(set(self.fluents) & set(self.actions))
        if shared:
            raise ModelError(f"symbols declared both as fluent and action: {', '.join(shared)}")
        return self

    def is_fluent(self, symbol: str) -> bool:
        return symbol in self.fluents

    def is_action(self, symbol: str) -> bool:
        return symbol in self.actions

    def kind(self, symbol: str) -> Optional[FluentKind]:
        decl = self.fluents.get(symbol)
        return decl.kind if decl else None

    def is_regular(self, symbol: str) -> bool:
        return self.kind(symbol) == FluentKind.REGULAR

    @property
    def fluent_symbols(self) -> List[str]:
        return sorted(self.fluents)

    @property
    def regular_fluents(self) -> List[str]:
        return sorted(f for f, d in self.fluents.items() if d.kind == FluentKind.REGULAR)

    @property
    def defined_fluents(self) -> List[str]:
        return sorted(f for f, d in self.fluents.items() if d.kind == FluentKind.DEFINED)

    @property
    def visible_fluents(self) -> List[str]:
        return sorted(f for f, d in self.fluents.items() if not d.auxiliary)

    @property
    def action_symbols(self) -> List[str]:
        return sorted(self.actions)

    def agent_of(self, action: str) -> Optional[str]:
        agents = self.actions.get(action, ())
        return agents[0] if agents else None

    def actions_of(self, agent: str) -> List[str]:
        return sorted(a for a, agents in self.actions.items() if agent in agents)

    def extend(
        self,
        fluents: Optional[Dict[str, FluentDecl]] = None,
        actions: Optional[Dict[str, Tuple[str, ...]]] = None,
    ) -> "Signature":
        return self.merge(Signature(fluents=fluents or {}, actions=actions or {}))

    def merge(self, other: "Signature") -> "Signature":
        fluents = dict(self.fluents)
        for symbol, decl in other.fluents.items():
            known = fluents.get(symbol)
            if known is not None and known.kind != decl.kind:
                raise CompositionError(
                    f"fluent {symbol} declared {known.kind.value} and {decl.kind.value}"
                )
            fluents[symbol] = known or decl
        actions = dict(self.actions)
        for symbol, agents in other.actions.items():
            actions[symbol] = tuple(sorted(set(actions.get(symbol, ())) | set(agents)))
        return Signature(fluents=fluents, actions=actions)


def _dedupe(laws: Iterable[Law]) -> tuple:
    merged: Dict[tuple, Law] = {}
    for law in laws:
        known = merged.get(law.structure)
        if known is None:
            merged[law.structure] = law
        else:
            groups = tuple(sorted(set(known.groups) | set(law.groups)))
            merged[law.structure] = known.model_copy(update={"groups": groups})
    return tuple(merged.values())


class ActionDescription(BaseModel):
    model_config = ConfigDict(frozen=True)

    signature: Signature = Field(default_factory=Signature)
    statics: Tuple[StaticLaw, ...] = ()
    dynamics: Tuple[DynamicLaw, ...] = ()

    @classmethod
    def build(
        cls,
        signature: Signature,
        statics: Iterable[StaticLaw] = (),
        dynamics: Iterable[DynamicLaw] = (),
    ) -> "ActionDescription":
        """Create a description with set semantics: structurally equal laws collapse into one."""
        return cls(signature=signature, statics=_dedupe(statics), dynamics=_dedupe(dynamics))

    @property
    def laws(self) -> Tuple[Law, ...]:
        return self.statics + self.dynamics

    def union(self, other: "ActionDescription") -> "ActionDescription":
        return ActionDescription.build(
            self.signature.merge(other.signature),
            self.statics + other.statics,
            self.dynamics + other.dynamics,
        )

    def used_symbols(self) -> List[str]:
        return sorted({lit.symbol for law in self.laws for lit in law.literals()})


class Diagnostic(BaseModel):
    model_config = ConfigDict(frozen=True)

    severity: Severity
    message: str
    line: Optional[int] = None
    col: Optional[int] = None

    def __str__(self) -> str:
        where = f"{self.line}:{self.col}: " if self.line is not None else ""
        return f"{where}{self.severity.value}: {self.message}"


# HTTP payloads

class SourceRequest(BaseModel):
    source: str = Field(..., description="`.bc` action description text")
    sorts: Dict[str, Union[List[Union[int, str]], str]] = Field(default_factory=dict)


class ConflictsRequest(SourceRequest):
    max_size: Optional[int] = Field(default=None, ge=0)


class ResolveRequest(SourceRequest):
    actions: List[str]
    state: List[str]
    target: List[str]
