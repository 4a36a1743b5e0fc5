import hashlib
from enum import Enum
from fractions import Fraction
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Family(str, Enum):
    A_ODD = "a-odd"
    D = "d"
    A_EVEN = "a-even"
    D4_TRIALITY = "d4-triality"


FAMILY_MIN_RANK = {
    Family.A_ODD: 3,
    Family.D: 2,
    Family.A_EVEN: 2,
    Family.D4_TRIALITY: 2,
}


class AlgebraKind(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    n: int

    @model_validator(mode="after")
    def check_rank(self) -> "AlgebraKind":
        if self.family == Family.D4_TRIALITY and self.n != 2:
            raise ValueError(f"d4-triality is defined for n = 2 only, got n = {self.n}")
        minimum = FAMILY_MIN_RANK[self.family]
        if self.n < minimum:
            raise ValueError(f"{self.family.value} requires n >= {minimum}, got n = {self.n}")
        return self

    @property
    def r(self) -> int:
        return 3 if self.family == Family.D4_TRIALITY else 2

    @property
    def has_ghosts(self) -> bool:
        return self.family in (Family.D, Family.A_EVEN)

    @property
    def label(self) -> str:
        return f"{self.family.value}(n={self.n})"


class SuiteName(str, Enum):
    SYMBOLIC_MRY = "symbolic-mry"
    SERRE = "serre"
    FOCK = "fock"
    PSI = "psi"
    AXIOMS = "axioms"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class RecordStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class RelationRecord(BaseModel):
    id: int
    indices: List[int] = Field(default_factory=list)
    status: RecordStatus
    residual: Optional[Any] = None
    ms: float = 0.0
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.status == RecordStatus.PASS


class Report(BaseModel):
    kind: Family
    n: int
    relations: List[RelationRecord] = Field(default_factory=list)

    @property
    def pass_count(self) -> int:
        return sum(1 for record in self.relations if record.passed)

    @property
    def fail_count(self) -> int:
        return len(self.relations) - self.pass_count

    @property
    def passed(self) -> bool:
        return self.fail_count == 0


class SuiteReport(BaseModel):
    name: SuiteName
    records: List[RelationRecord] = Field(default_factory=list)
    pass_count: int = 0
    fail_count: int = 0
    ms: float = 0.0


class RunConfig(BaseModel):
    family: Family
    n: int
    suites: List[SuiteName] = Field(default_factory=lambda: list(SuiteName))
    fock_energy: str = "4"
    mode_bound: int = Field(default=2, ge=0)
    output_format: OutputFormat = OutputFormat.JSON
    seed: int = 0
    jobs: int = Field(default=1, ge=1)
    state_cap: int = Field(default=2000, ge=1)
    record_timings: bool = True
    random_samples: int = Field(default=1000, ge=1)

    @field_validator("fock_energy")
    @classmethod
    def check_energy(cls, value: str) -> str:
        try:
            energy = Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError(f"fock energy must be a rational number, got {value!r}") from err
        if energy < 0:
            raise ValueError(f"fock energy must be >= 0, got {value}")
        return str(energy)

    @field_validator("suites")
    @classmethod
    def check_suites(cls, value: List[SuiteName]) -> List[SuiteName]:
        if not value:
            raise ValueError("select at least one suite")
        return list(dict.fromkeys(value))

    @model_validator(mode="after")
    def check_kind(self) -> "RunConfig":
        AlgebraKind(family=self.family, n=self.n)
        return self

    @property
    def kind(self) -> AlgebraKind:
        return AlgebraKind(family=self.family, n=self.n)

    @property
    def energy(self) -> Fraction:
        return Fraction(self.fock_energy)

    @property
    def run_id(self) -> str:
        payload = self.model_dump_json(exclude={"output_format", "jobs"})
        return hashlib.sha1(payload.encode()).hexdigest()[:16]


class RunReport(BaseModel):
    config: RunConfig
    suites: List[SuiteReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(suite.fail_count == 0 for suite in self.suites)
