import pytest

from bcmas.app.errors import CompositionError, ModelError
from bcmas.app.model import expand_abbreviations, format_description, format_law, validate
from bcmas.app.schemas import (
    AbbreviationKind,
    AbbreviationLaw,
    ActionDescription,
    DynamicLaw,
    FluentDecl,
    FluentKind,
    LawOrigin,
    Literal,
    Severity,
    Signature,
    StaticLaw,
)

F = Literal(symbol="f")
G = Literal(symbol="g")
A = Literal(symbol="a")


@pytest.fixture
def signature():
    return Signature(
        fluents={"f": FluentDecl(kind=FluentKind.REGULAR), "g": FluentDecl(kind=FluentKind.REGULAR),
                 "d": FluentDecl(kind=FluentKind.DEFINED)},
        actions={"a": ("x",), "b": ("y",)},
    )


class TestLiteral:

    def test_parse_and_render(self):
        lit = Literal.parse(" -at(a,1) ")
        assert lit == Literal(symbol="at(a,1)", positive=False)
        assert str(lit) == "-at(a,1)"
        assert lit.complement() == Literal(symbol="at(a,1)")


class TestSignature:

    def test_fluent_and_action_must_be_disjoint(self):
        with pytest.raises(ModelError, match="both as fluent and action"):
            Signature(fluents={"a": FluentDecl(kind=FluentKind.REGULAR)}, actions={"a": ()})

    def test_merge_unites_agents(self, signature):
        other = Signature(actions={"a": ("z",)})
        assert signature.merge(other).actions["a"] == ("x", "z")

    def test_merge_rejects_kind_clash(self, signature):
        other = Signature(fluents={"f": FluentDecl(kind=FluentKind.DEFINED)})
        with pytest.raises(CompositionError, match="fluent f declared regular and defined"):
            signature.merge(other)

    def test_views(self, signature):
        assert signature.regular_fluents == ["f", "g"]
        assert signature.defined_fluents == ["d"]
        assert signature.actions_of("y") == ["b"]


class TestExpansion:

    def test_inertial(self, signature):
        desc = expand_abbreviations(
            [AbbreviationLaw(kind=AbbreviationKind.INERTIAL, literals=(F,), group="i")], signature)
        assert len(desc.dynamics) == 2
        assert {law.origin for law in desc.dynamics} == {LawOrigin.INERTIAL}
        positive = next(law for law in desc.dynamics if law.head.positive)
        assert positive.after_part == (F,) and positive.ifcons_part == (F,)

    def test_inertial_rejects_defined_fluent(self, signature):
        law = AbbreviationLaw(kind=AbbreviationKind.INERTIAL, literals=(Literal(symbol="d"),), group="i")
        with pytest.raises(ModelError, match="names the defined fluent d"):
            expand_abbreviations([law], signature)

    def test_default(self, signature):
        desc = expand_abbreviations(
            [AbbreviationLaw(kind=AbbreviationKind.DEFAULT, literals=(G.complement(),), condition=(F,),
                             group="dflt")], signature)
        (law,) = desc.statics
        assert law.head == G.complement()
        assert law.if_part == (F,)
        assert law.ifcons_part == (G.complement(),)

    def test_nonexecutable_introduces_auxiliary_regular_fluent(self, signature):
        desc = expand_abbreviations(
            [AbbreviationLaw(kind=AbbreviationKind.NONEXECUTABLE, actions=(A,), condition=(F,), group="n1")],
            signature)
        decl = desc.signature.fluents["n1"]
        assert decl.kind == FluentKind.REGULAR and decl.auxiliary
        assert sorted(str(law.head) for law in desc.dynamics) == ["-n1", "n1"]
        assert all(law.after_part == (A, F) for law in desc.dynamics)
        (frame,) = desc.statics
        assert frame.frame and frame.head == Literal(symbol="n1", positive=False)
        assert "n1" not in desc.signature.visible_fluents

    def test_impossible_introduces_auxiliary_defined_fluent(self, signature):
        desc = expand_abbreviations(
            [AbbreviationLaw(kind=AbbreviationKind.IMPOSSIBLE, literals=(F, G), group="imp(x)")], signature)
        assert desc.signature.kind("imp(x)") == FluentKind.DEFINED
        assert len(desc.statics) == 3
        assert sum(law.frame for law in desc.statics) == 1

    def test_law_id_clashing_with_declared_fluent(self, signature):
        law = AbbreviationLaw(kind=AbbreviationKind.IMPOSSIBLE, literals=(F,), group="g")
        with pytest.raises(ModelError, match="clashes with a declared fluent"):
            expand_abbreviations([law], signature)

    def test_defined_head_of_dynamic_law(self, signature):
        law = DynamicLaw(head=Literal(symbol="d"), after_part=(A,), groups=("law1",))
        with pytest.raises(ModelError, match="defined fluent d"):
            expand_abbreviations([law], signature)

    def test_undeclared_symbol(self, signature):
        law = StaticLaw(head=Literal(symbol="h"), groups=("law1",))
        with pytest.raises(ModelError, match="undeclared symbol h"):
            expand_abbreviations([law], signature)

    def test_structural_duplicates_collapse(self, signature):
        laws = [StaticLaw(head=F, if_part=(G,), groups=("law1",)),
                StaticLaw(head=F, if_part=(G,), groups=("law2",))]
        desc = expand_abbreviations(laws, signature)
        (law,) = desc.statics
        assert law.groups == ("law1", "law2")

    def test_expansion_is_deterministic_and_idempotent(self, signature):
        laws = [
            AbbreviationLaw(kind=AbbreviationKind.INERTIAL, literals=(F, G), group="i"),
            AbbreviationLaw(kind=AbbreviationKind.NONEXECUTABLE, actions=(A,), condition=(F,), group="n1"),
            AbbreviationLaw(kind=AbbreviationKind.IMPOSSIBLE, literals=(F, G), group="imp(x)"),
            StaticLaw(head=F, if_part=(G,), groups=("law1",)),
        ]
        first = expand_abbreviations(laws, signature)
        assert expand_abbreviations(laws, signature) == first
        assert expand_abbreviations(list(first.laws), first.signature) == first


class TestValidate:

    def test_clean_description(self, signature):
        desc = ActionDescription.build(signature, [StaticLaw(head=Literal(symbol="d"), if_part=(F,))])
        assert validate(desc) == []

    def test_errors_before_warnings(self, signature):
        shared = signature.extend(actions={"a": ("z",)})
        desc = ActionDescription.build(shared, [StaticLaw(head=F, if_part=(A,))])
        diagnostics = validate(desc)
        assert [d.severity for d in diagnostics] == [Severity.ERROR, Severity.ERROR, Severity.WARNING]
        assert "shared by agents x, z" in diagnostics[0].message
        assert "action a occurs in static law" in diagnostics[1].message
        assert "defined fluent d heads no static law" in diagnostics[2].message


class TestFormatting:

    def test_static_and_dynamic(self):
        assert format_law(StaticLaw(head=F, if_part=(G,), ifcons_part=(F,))) == "f if g ifcons f."
        assert format_law(StaticLaw(head=F)) == "f."
        assert format_law(DynamicLaw(head=F, after_part=(A, G.complement()))) == "f after a, -g."
        assert format_law(DynamicLaw(head=F)) == "f after."

    def test_description_listing(self, signature):
        desc = ActionDescription.build(signature, [StaticLaw(head=F, groups=("law1",))])
        text = format_description(desc)
        assert text.startswith("% 1 static and 0 dynamic laws")
        assert "% action a agent x" in text
        assert "f.  % law1" in text
