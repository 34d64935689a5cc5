import logging

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, TypedDict, Union

from langgraph.graph import END, StateGraph
from pydantic import BaseModel, Field, ValidationError, field_validator

from .composer import AbPolicy, MasSpec, compose_global, compose_union
from .errors import BcError, CompositionError
from .grounder import ground
from .model import validate
from .parser import parse
from .schemas import ActionDescription, Diagnostic

logger = logging.getLogger(__name__)

SortOverride = Union[List[Union[int, str]], str]


class Stage(str, Enum):
    UNION = "union"
    GLOBAL = "global"


def sort_values(override: SortOverride) -> Tuple[Union[int, str], ...]:
    """`"1..4"` or an explicit value list."""
    if isinstance(override, str):
        low, sep, high = override.partition("..")
        if not sep:
            raise CompositionError(f"sort override {override!r} is neither a range nor a list")
        return tuple(range(int(low), int(high) + 1))
    return tuple(override)


class AgentEntry(BaseModel):
    file: str
    sorts: Dict[str, SortOverride] = Field(default_factory=dict)


class Manifest(BaseModel):
    stage: Stage = Stage.UNION
    agents: Union[List[str], Dict[str, AgentEntry]]
    conflict: Optional[str] = None
    resolution: Optional[str] = None
    sorts: Dict[str, SortOverride] = Field(default_factory=dict)
    ab_policy: AbPolicy = AbPolicy.HEAD
    base_dir: Path = Path(".")

    @field_validator("agents")
    @classmethod
    def agents_not_empty(cls, value):
        if not value:
            raise ValueError("a manifest names at least one agent")
        return value

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Manifest":
        path = Path(path)
        with open(path, "rb") as f:
            try:
                data = tomllib.load(f)
            except tomllib.TOMLDecodeError as e:
                raise CompositionError(f"{path}: {e}")
        try:
            return cls(**data, base_dir=path.parent)
        except ValidationError as e:
            raise CompositionError(f"{path}: invalid manifest: {e.errors()[0]['msg']}")

    def agent_entries(self) -> Dict[str, AgentEntry]:
        if isinstance(self.agents, dict):
            return dict(self.agents)
        return {Path(p).stem: AgentEntry(file=p) for p in self.agents}

    def resolve(self, relative: str) -> Path:
        return (self.base_dir / relative).resolve()


def description_from_text(text: str, sorts: Optional[Dict[str, SortOverride]] = None,
                          namespace: Sequence[str] = ()) -> ActionDescription:
    spec = parse(text)
    known = {s.name for s in spec.sorts}
    overrides = {name: sort_values(v) for name, v in (sorts or {}).items() if name in known}
    desc, _ = ground(spec, namespace=namespace, sorts=overrides)
    return desc


def load_description(path: Union[str, Path], sorts: Optional[Dict[str, SortOverride]] = None,
                     namespace: Sequence[str] = ()) -> ActionDescription:
    return description_from_text(Path(path).read_text(encoding="utf-8"), sorts, namespace)


class CompositionState(TypedDict):
    manifest_path: str
    stage: Optional[Stage]
    manifest: Optional[Manifest]
    agents: Dict[str, ActionDescription]
    conflict: Optional[ActionDescription]
    resolution: Optional[ActionDescription]
    union: Optional[ActionDescription]
    global_view: Optional[ActionDescription]
    diagnostics: List[Diagnostic]


class CompositionResult(BaseModel):
    stage: Stage
    agents: Dict[str, ActionDescription]
    union: ActionDescription
    global_view: Optional[ActionDescription] = None
    diagnostics: List[Diagnostic] = Field(default_factory=list)
    policy: AbPolicy = AbPolicy.HEAD

    @property
    def description(self) -> ActionDescription:
        return self.global_view if self.stage == Stage.GLOBAL else self.union


class CompositionWorkflow:
    """Manifest-driven pipeline: agents and components are loaded, then U and (optionally) M are composed."""

    def __init__(self, policy: Optional[AbPolicy] = None):
        self.policy = policy
        self.graph = self._build_graph()

    def _build_graph(self):
        workflow = StateGraph(CompositionState)

        workflow.add_node("load_manifest", self.load_manifest)
        workflow.add_node("load_agents", self.load_agents)
        workflow.add_node("load_components", self.load_components)
        workflow.add_node("compose_union", self.compose_union)
        workflow.add_node("compose_global", self.compose_global)
        workflow.add_node("validate", self.validate)

        workflow.set_entry_point("load_manifest")
        workflow.add_edge("load_manifest", "load_agents")
        workflow.add_edge("load_agents", "load_components")
        workflow.add_edge("load_components", "compose_union")
        workflow.add_conditional_edges(
            "compose_union",
            self.route_by_stage,
            {
                Stage.GLOBAL.value: "compose_global",
                Stage.UNION.value: "validate",
            },
        )
        workflow.add_edge("compose_global", "validate")
        workflow.add_edge("validate", END)

        return workflow.compile()

    def _policy(self, state: CompositionState) -> AbPolicy:
        return self.policy or state["manifest"].ab_policy

    def load_manifest(self, state: CompositionState) -> CompositionState:
        manifest = Manifest.load(state["manifest_path"])
        state["manifest"] = manifest
        if state.get("stage") is None:
            state["stage"] = manifest.stage
        logger.info(f"Loaded manifest {state['manifest_path']} (stage {state['stage'].value})")
        return state

    def load_agents(self, state: CompositionState) -> CompositionState:
        manifest = state["manifest"]
        agents = {}
        for agent_id, entry in sorted(manifest.agent_entries().items()):
            sorts = {**manifest.sorts, **entry.sorts}
            agents[agent_id] = load_description(manifest.resolve(entry.file), sorts, namespace=(agent_id,))
            logger.info(f"Loaded agent {agent_id} from {entry.file}")
        state["agents"] = agents
        return state

    def load_components(self, state: CompositionState) -> CompositionState:
        manifest = state["manifest"]
        state["conflict"] = (load_description(manifest.resolve(manifest.conflict), manifest.sorts)
                             if manifest.conflict else ActionDescription())
        state["resolution"] = (load_description(manifest.resolve(manifest.resolution), manifest.sorts)
                               if manifest.resolution else ActionDescription())
        return state

    def compose_union(self, state: CompositionState) -> CompositionState:
        spec = MasSpec(agents=state["agents"], conflict=state["conflict"],
                       resolution=state["resolution"], policy=self._policy(state))
        state["union"] = compose_union(spec)
        return state

    def compose_global(self, state: CompositionState) -> CompositionState:
        state["global_view"] = compose_global(state["union"], state["resolution"], self._policy(state))
        return state

    def validate(self, state: CompositionState) -> CompositionState:
        desc = state["global_view"] if state["stage"] == Stage.GLOBAL else state["union"]
        state["diagnostics"] = validate(desc)
        for diagnostic in state["diagnostics"]:
            logger.warning(str(diagnostic))
        return state

    def route_by_stage(self, state: CompositionState) -> str:
        return state["stage"].value

    def run(self, manifest_path: Union[str, Path], stage: Optional[Stage] = None) -> CompositionResult:
        initial_state: CompositionState = {
            "manifest_path": str(manifest_path),
            "stage": stage,
            "manifest": None,
            "agents": {},
            "conflict": None,
            "resolution": None,
            "union": None,
            "global_view": None,
            "diagnostics": [],
        }
        try:
            final_state = self.graph.invoke(initial_state)
        except BcError:
            raise
        except OSError as e:
            raise CompositionError(f"cannot read {e.filename}: {e.strerror}")
        return CompositionResult(
            stage=final_state["stage"],
            agents=final_state["agents"],
            union=final_state["union"],
            global_view=final_state["global_view"],
            diagnostics=final_state["diagnostics"],
            policy=self._policy(final_state),
        )
