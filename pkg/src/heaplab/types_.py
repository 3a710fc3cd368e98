from enum import Enum
from typing import Optional

from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict, Field


class NoExtraArgs(PydanticBaseModel):
    model_config = ConfigDict(extra="forbid")


BaseModel = NoExtraArgs


class FrozenModel(PydanticBaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class Suites(str, Enum):
    universal = "universal"
    regularity = "regularity"
    kernel = "kernel"
    confluence = "confluence"
    lemmas = "lemmas"
    acyclic_search = "acyclic-search"
    all = "all"


class DismantlingStepModel(BaseModel):
    word: list[str]
    vertex: int
    piece: str
    side: str


class CheckReport(BaseModel):
    word: list[str]
    factors: str
    p1: Optional[bool] = None
    p2: Optional[bool] = None
    acyclic: Optional[bool] = None
    strongly_acyclic: Optional[bool] = None
    kernel_dim: Optional[int] = None
    characteristic: Optional[int] = None
    chains: Optional[list[list[int]]] = None
    dismantling: Optional[list[DismantlingStepModel]] = None


class ComponentReport(BaseModel):
    pieces: list[str]
    tag: str
    params: dict[str, int | str | list[str]]
    hasR: bool
    witnessWord: Optional[list[str]] = None


class Violation(BaseModel):
    kind: str
    word: list[str]
    detail: str = ""


class VerificationReport(BaseModel):
    structure_id: str
    suite: str
    max_vertices: int
    heaps_checked: dict[int, int] = Field(default_factory=dict)
    counters: dict[str, int] = Field(default_factory=dict)
    violations: list[Violation] = Field(default_factory=list)
    findings: list[Violation] = Field(default_factory=list)
    truncated: bool = False
    fatal: bool = False
    verdict: Optional[str] = None
    wall_time_s: float = 0.0

    def bump(self, counter: str, by: int = 1) -> None:
        self.counters[counter] = self.counters.get(counter, 0) + by

    def saw(self, size: int) -> None:
        self.heaps_checked[size] = self.heaps_checked.get(size, 0) + 1

    def finalize(self) -> "VerificationReport":
        self.violations.sort(key=lambda v: (v.kind, len(v.word), v.word, v.detail))
        self.findings.sort(key=lambda v: (v.kind, len(v.word), v.word, v.detail))
        self.heaps_checked = dict(sorted(self.heaps_checked.items()))
        self.counters = dict(sorted(self.counters.items()))
        return self

    @property
    def ok(self) -> bool:
        return not self.violations and not self.fatal

    def stable_json(self, include_timings: bool = False) -> str:
        exclude = None if include_timings else {"wall_time_s"}
        return self.model_dump_json(indent=2, exclude=exclude)


class VerificationRun(BaseModel):
    structure_id: str
    reports: list[VerificationReport] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    @property
    def fatal(self) -> bool:
        return any(r.fatal for r in self.reports)

    def stable_json(self, include_timings: bool = False) -> str:
        exclude = None if include_timings else {"reports": {"__all__": {"wall_time_s"}}}
        return self.model_dump_json(indent=2, exclude=exclude)
