import itertools
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel

from .errors import GroundingError, ModelError
from .model import expand_abbreviations
from .parser import (
    BUILTIN_FLUENTS,
    AllMacro,
    Compound,
    Comparison,
    LawKind,
    LawSchema,
    LiteralPattern,
    Num,
    SpecFile,
    Var,
    variable_sorts,
)
from .schemas import (
    AbbreviationKind,
    AbbreviationLaw,
    ActionDescription,
    DynamicLaw,
    FluentDecl,
    Literal,
    Signature,
    StaticLaw,
)

logger = logging.getLogger(__name__)

Value = Union[int, str]
Env = Dict[str, Value]

LAW_PREFIX = {
    LawKind.NONEXECUTABLE: "n",
    LawKind.IMPOSSIBLE: "imp",
}


class GroundingStats(BaseModel):
    schematic_laws: int = 0
    ground_laws: int = 0
    eliminated: int = 0


def _render(value: Value) -> str:
    return str(value)


class Grounder:
    """Instantiates one SpecFile; `namespace` prefixes generated law ids (used for agent files)."""

    def __init__(self, spec: SpecFile, namespace: Sequence[str] = (),
                 sorts: Optional[Mapping[str, Sequence[Value]]] = None):
        self.spec = spec
        self.namespace = tuple(namespace)
        self.sorts: Dict[str, Tuple[Value, ...]] = dict(spec.sort_map())
        for name, values in (sorts or {}).items():
            if name not in self.sorts:
                raise GroundingError(f"unknown sort {name} in override")
            self.sorts[name] = tuple(values)
        for name, values in self.sorts.items():
            if not values:
                raise GroundingError(f"empty sort {name}")
        self.stats = GroundingStats(schematic_laws=len(spec.laws))

    # declarations

    def _instances(self, params) -> List[Tuple[Value, ...]]:
        return list(itertools.product(*(self.sorts[p.sort] for p in params)))

    @staticmethod
    def _symbol(name: str, values: Sequence[Value]) -> str:
        if not values:
            return name
        return f"{name}({','.join(_render(v) for v in values)})"

    def signature(self) -> Signature:
        fluents: Dict[str, FluentDecl] = {}
        actions: Dict[str, Tuple[str, ...]] = {}
        for decl in self.spec.fluents:
            for values in self._instances(decl.params):
                fluents[self._symbol(decl.name, values)] = FluentDecl(kind=decl.kind)
        for decl in self.spec.actions:
            for values in self._instances(decl.params):
                agent: Tuple[str, ...] = ()
                if isinstance(decl.agent, Var):
                    index = [p.var for p in decl.params].index(decl.agent.name)
                    agent = (_render(values[index]),)
                elif isinstance(decl.agent, Compound):
                    agent = (decl.agent.name,)
                actions[self._symbol(decl.name, values)] = agent
        try:
            return Signature(fluents=fluents, actions=actions)
        except ModelError as e:
            raise GroundingError(str(e))

    # terms and conditions

    def term(self, term, env: Env, loc) -> str:
        if isinstance(term, Var):
            return _render(env[term.name])
        if isinstance(term, Num):
            return str(term.value)
        text = self._symbol(term.name, [self.term(a, env, loc) for a in term.args])
        return ("-" + text) if term.negated else text

    def value(self, expr, env: Env, loc) -> Value:
        if isinstance(expr, Var):
            return env[expr.name]
        if isinstance(expr, Num):
            return expr.value
        if isinstance(expr, Compound):
            return self.term(expr, env, loc)
        left, right = self.value(expr.left, env, loc), self.value(expr.right, env, loc)
        if not isinstance(left, int) or not isinstance(right, int):
            raise GroundingError("where-clause arithmetic over a non-integer sort",
                                 loc.line if loc else None, loc.col if loc else None)
        return left + right if expr.op == "+" else left - right

    def holds(self, comparison: Comparison, env: Env, loc) -> bool:
        left = self.value(comparison.left, env, loc)
        if comparison.op in ("in", "notin"):
            return (left in self.sorts[comparison.right.name]) == (comparison.op == "in")
        right = self.value(comparison.right, env, loc)
        if comparison.op == "==":
            return left == right
        if comparison.op == "!=":
            return left != right
        if not isinstance(left, int) or not isinstance(right, int):
            raise GroundingError(f"comparison {comparison.op} over a non-integer sort",
                                 loc.line if loc else None, loc.col if loc else None)
        return {
            "<": left < right,
            "<=": left <= right,
            ">": left > right,
            ">=": left >= right,
        }[comparison.op]

    def literal(self, pattern: LiteralPattern, env: Env, loc, builtins: Dict[str, FluentDecl]) -> Literal:
        symbol = self.term(pattern.atom, env, loc)
        if pattern.atom.name in BUILTIN_FLUENTS:
            builtins[symbol] = FluentDecl(kind=BUILTIN_FLUENTS[pattern.atom.name])
        return Literal(symbol=symbol, positive=pattern.positive)

    def items(self, items, env: Env, loc, builtins) -> Tuple[Literal, ...]:
        out: List[Literal] = []
        for item in items:
            if isinstance(item, AllMacro):
                for value in self.sorts[item.sort]:
                    out.append(self.literal(item.literal, {**env, item.var: value}, loc, builtins))
            else:
                out.append(self.literal(item, env, loc, builtins))
        return tuple(out)

    # laws

    def assignments(self, law: LawSchema) -> List[Env]:
        domains: Dict[str, List[Value]] = {}
        for var, sorts in variable_sorts(self.spec, law).items():
            values = list(self.sorts[sorts[0]])
            for other in sorts[1:]:
                allowed = set(self.sorts[other])
                values = [v for v in values if v in allowed]
            domains[var] = values
        names = sorted(domains)
        return [dict(zip(names, combo)) for combo in itertools.product(*(domains[n] for n in names))]

    def law_id(self, law: LawSchema, index: int, env: Env) -> str:
        if law.label is not None:
            return self.term(law.label, env, law.loc)
        prefix = LAW_PREFIX.get(law.kind, "law")
        args = list(self.namespace) + [_render(env[name]) for name in sorted(env)]
        return self._symbol(f"{prefix}{index}", args)

    def instantiate(self, law: LawSchema, index: int, env: Env, builtins):
        loc = law.loc
        group = self.law_id(law, index, env)
        groups = (group,)
        if law.kind == LawKind.STATIC:
            return StaticLaw(head=self.literal(law.head, env, loc, builtins),
                             if_part=self.items(law.if_part, env, loc, builtins),
                             ifcons_part=self.items(law.ifcons_part, env, loc, builtins),
                             groups=groups)
        if law.kind == LawKind.DYNAMIC:
            return DynamicLaw(head=self.literal(law.head, env, loc, builtins),
                              after_part=self.items(law.after_part, env, loc, builtins),
                              ifcons_part=self.items(law.ifcons_part, env, loc, builtins),
                              groups=groups)
        if law.kind == LawKind.IMPOSSIBLE:
            return AbbreviationLaw(kind=AbbreviationKind.IMPOSSIBLE, group=group,
                                   literals=self.items(law.if_part, env, loc, builtins))
        if law.kind == LawKind.NONEXECUTABLE:
            return AbbreviationLaw(kind=AbbreviationKind.NONEXECUTABLE, group=group,
                                   actions=self.items(law.after_part, env, loc, builtins),
                                   condition=self.items(law.if_part, env, loc, builtins))
        if law.kind == LawKind.INERTIAL:
            return AbbreviationLaw(kind=AbbreviationKind.INERTIAL, group=group,
                                   literals=self.items(law.after_part, env, loc, builtins))
        return AbbreviationLaw(kind=AbbreviationKind.DEFAULT, group=group,
                               literals=(self.literal(law.head, env, loc, builtins),),
                               condition=self.items(law.if_part, env, loc, builtins))

    def run(self) -> Tuple[ActionDescription, GroundingStats]:
        signature = self.signature()
        builtins: Dict[str, FluentDecl] = {}
        ground_laws = []
        for index, law in enumerate(self.spec.laws, start=1):
            for env in self.assignments(law):
                if all(self.holds(c, env, law.loc) for c in law.where):
                    ground_laws.append(self.instantiate(law, index, env, builtins))
                    self.stats.ground_laws += 1
                else:
                    self.stats.eliminated += 1
        signature = signature.extend(
            fluents={s: d for s, d in builtins.items() if not signature.is_fluent(s)})
        desc = expand_abbreviations(ground_laws, signature)
        logger.info(f"Grounded {self.stats.schematic_laws} schematic laws into "
                    f"{self.stats.ground_laws} ground laws ({self.stats.eliminated} eliminated)")
        return desc, self.stats


def ground(spec: SpecFile, namespace: Sequence[str] = (),
           sorts: Optional[Mapping[str, Sequence[Value]]] = None) -> Tuple[ActionDescription, GroundingStats]:
    return Grounder(spec, namespace=namespace, sorts=sorts).run()
