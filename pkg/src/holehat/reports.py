from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .graph import Graph

LEMMA_IDS = (
    "wiggly1", "wiggly2", "wiggly3", "wiggly4", "wiggly5",
    "fracture_props", "crossing", "small_side", "homog_partition",
    "bigcomp", "smalldeg", "strongEH", "homog_bound",
)

# same checks under strengthened hypotheses
VARIANT_IDS = ("wiggly3_anticonnected", "fracture_props_attached")

# checks whose hypotheses were rewritten without weights
REFORMULATED = {"fracture_props", "fracture_props_attached", "crossing", "small_side"}


@dataclass
class Violation:
    graph: Graph
    witness: dict[str, Any]


@dataclass
class LemmaReport:
    """Outcome of checking one lemma over some graphs and configurations."""

    lemma_id: str
    graphs_checked: int = 0
    configs_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    weight_free_reformulation: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, g: Graph, **witness) -> None:
        self.violations.append(Violation(g, witness))

    def merge(self, other: "LemmaReport") -> None:
        self.graphs_checked += other.graphs_checked
        self.configs_checked += other.configs_checked
        self.violations.extend(other.violations)
        self.notes.extend(n for n in other.notes if n not in self.notes)
        self.weight_free_reformulation |= other.weight_free_reformulation

    def summary(self) -> dict[str, Any]:
        return {
            "lemma": self.lemma_id,
            "graphs": self.graphs_checked,
            "configurations": self.configs_checked,
            "violations": len(self.violations),
            "weight_free_reformulation": self.weight_free_reformulation,
            "notes": list(self.notes),
        }
