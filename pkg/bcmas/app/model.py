import logging
from typing import Dict, Iterable, List, Sequence, Union

from .errors import ModelError
from .schemas import (
    AbbreviationKind,
    AbbreviationLaw,
    ActionDescription,
    Diagnostic,
    DynamicLaw,
    FluentDecl,
    FluentKind,
    LawOrigin,
    Literal,
    Severity,
    Signature,
    StaticLaw,
)

logger = logging.getLogger(__name__)

AnyLaw = Union[StaticLaw, DynamicLaw, AbbreviationLaw]


def _fresh_fluent(law: AbbreviationLaw, kind: FluentKind, signature: Signature,
                  fresh: Dict[str, FluentDecl]) -> Literal:
    """The fresh fluent of an abbreviation is its LawId."""
    symbol = law.group
    known = fresh.get(symbol) or signature.fluents.get(symbol)
    if signature.is_action(symbol):
        raise ModelError(f"law id {symbol} clashes with an action")
    if known is not None and (not known.auxiliary or known.kind != kind):
        raise ModelError(f"law id {symbol} clashes with a declared fluent")
    fresh[symbol] = FluentDecl(kind=kind, auxiliary=True)
    return Literal(symbol=symbol)


def _expand(law: AbbreviationLaw, signature: Signature, fresh: Dict[str, FluentDecl]):
    groups = (law.group,)
    statics: List[StaticLaw] = []
    dynamics: List[DynamicLaw] = []

    if law.kind == AbbreviationKind.INERTIAL:
        for lit in law.literals:
            for sign in (True, False):
                f = Literal(symbol=lit.symbol, positive=sign)
                dynamics.append(DynamicLaw(head=f, after_part=(f,), ifcons_part=(f,),
                                           groups=groups, origin=LawOrigin.INERTIAL))
    elif law.kind == AbbreviationKind.DEFAULT:
        head = law.literals[0]
        statics.append(StaticLaw(head=head, if_part=law.condition, ifcons_part=(head,),
                                 groups=groups, origin=LawOrigin.DEFAULT))
    elif law.kind == AbbreviationKind.NONEXECUTABLE:
        k = _fresh_fluent(law, FluentKind.REGULAR, signature, fresh)
        body = law.actions + law.condition
        for head in (k, k.complement()):
            dynamics.append(DynamicLaw(head=head, after_part=body, groups=groups,
                                       origin=LawOrigin.NONEXECUTABLE))
        statics.append(StaticLaw(head=k.complement(), groups=groups,
                                 origin=LawOrigin.NONEXECUTABLE, frame=True))
    else:
        k = _fresh_fluent(law, FluentKind.DEFINED, signature, fresh)
        for head in (k, k.complement()):
            statics.append(StaticLaw(head=head, if_part=law.literals, groups=groups,
                                     origin=LawOrigin.IMPOSSIBLE))
        statics.append(StaticLaw(head=k.complement(), groups=groups,
                                 origin=LawOrigin.IMPOSSIBLE, frame=True))
    return statics, dynamics


def _check_law(law: Union[StaticLaw, DynamicLaw], signature: Signature) -> None:
    for lit in law.literals():
        if not signature.is_fluent(lit.symbol) and not signature.is_action(lit.symbol):
            raise ModelError(f"undeclared symbol {lit.symbol} in law {law.law_id}")
    if isinstance(law, StaticLaw):
        fluent_parts = law.literals()
    else:
        if signature.kind(law.head.symbol) == FluentKind.DEFINED:
            raise ModelError(f"head of dynamic law {law.law_id} is the defined fluent {law.head.symbol}")
        fluent_parts = (law.head,) + law.ifcons_part
    for lit in fluent_parts:
        if signature.is_action(lit.symbol):
            raise ModelError(f"action {lit.symbol} used where a fluent literal is required in law {law.law_id}")


def expand_abbreviations(laws: Iterable[AnyLaw], signature: Signature) -> ActionDescription:
    """
    Rewrite impossible / nonexecutable / inertial / default laws into static and
    dynamic laws and return the resulting ground description.

    Every law produced by one abbreviation carries the abbreviation's LawId as
    its group. Abbreviations that introduce a fresh fluent also get a frame law
    fixing it false.
    """
    fresh: Dict[str, FluentDecl] = {}
    statics: List[StaticLaw] = []
    dynamics: List[DynamicLaw] = []

    for law in laws:
        if isinstance(law, AbbreviationLaw):
            if law.kind == AbbreviationKind.INERTIAL:
                for lit in law.literals:
                    if not signature.is_fluent(lit.symbol):
                        raise ModelError(f"undeclared fluent {lit.symbol} in inertial law {law.group}")
                    if not signature.is_regular(lit.symbol):
                        raise ModelError(f"inertial law {law.group} names the defined fluent {lit.symbol}")
            s, d = _expand(law, signature, fresh)
            statics.extend(s)
            dynamics.extend(d)
        elif isinstance(law, StaticLaw):
            statics.append(law)
        else:
            dynamics.append(law)

    extended = signature.extend(fluents=fresh)
    for law in statics + dynamics:
        _check_law(law, extended)

    desc = ActionDescription.build(extended, statics, dynamics)
    logger.debug(f"Expanded into {len(desc.statics)} static and {len(desc.dynamics)} dynamic laws")
    return desc


def validate(desc: ActionDescription) -> List[Diagnostic]:
    sig = desc.signature
    diagnostics: List[Diagnostic] = []

    def error(message: str) -> None:
        diagnostics.append(Diagnostic(severity=Severity.ERROR, message=message))

    for law in desc.laws:
        for lit in law.literals():
            if not sig.is_fluent(lit.symbol) and not sig.is_action(lit.symbol):
                error(f"undeclared symbol {lit.symbol} in law {law.law_id}")
    for law in desc.dynamics:
        if sig.kind(law.head.symbol) == FluentKind.DEFINED:
            error(f"defined fluent {law.head.symbol} is the head of dynamic law {law.law_id}")
        elif sig.is_action(law.head.symbol):
            error(f"action {law.head.symbol} is the head of dynamic law {law.law_id}")
    for law in desc.statics:
        for lit in law.literals():
            if sig.is_action(lit.symbol):
                error(f"action {lit.symbol} occurs in static law {law.law_id}")

    heads = {law.head.symbol for law in desc.statics}
    for fluent in sig.defined_fluents:
        if fluent not in heads:
            diagnostics.append(Diagnostic(
                severity=Severity.WARNING,
                message=f"defined fluent {fluent} heads no static law: no stable model can assign it",
            ))

    for action, agents in sorted(sig.actions.items()):
        if len(agents) > 1:
            error(f"action {action} is shared by agents {', '.join(agents)}")

    return sorted(diagnostics, key=lambda d: (d.severity != Severity.ERROR, d.message))


def _literals(lits: Sequence[Literal]) -> str:
    return ", ".join(str(lit) for lit in lits)


def format_law(law: Union[StaticLaw, DynamicLaw]) -> str:
    """Render a ground law in `.bc` syntax."""
    text = str(law.head)
    if isinstance(law, StaticLaw):
        if law.if_part:
            text += f" if {_literals(law.if_part)}"
    else:
        text += " after"
        if law.after_part:
            text += f" {_literals(law.after_part)}"
    if law.ifcons_part:
        text += f" ifcons {_literals(law.ifcons_part)}"
    return text + "."


def format_description(desc: ActionDescription) -> str:
    lines = [f"% {len(desc.statics)} static and {len(desc.dynamics)} dynamic laws"]
    for fluent in desc.signature.fluent_symbols:
        decl = desc.signature.fluents[fluent]
        note = " (auxiliary)" if decl.auxiliary else ""
        lines.append(f"% fluent {fluent} : {decl.kind.value}{note}")
    for action in desc.signature.action_symbols:
        agents = desc.signature.actions[action]
        lines.append(f"% action {action}" + (f" agent {', '.join(agents)}" if agents else ""))
    for law in desc.laws:
        lines.append(f"{format_law(law)}  % {', '.join(law.groups)}")
    return "\n".join(lines) + "\n"
