from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.modules.congruences.config import CheckKind, CheckStatus, ModuleConfig, ReportFormat


# --- Run configuration ---
class SamplingConfig(BaseModel):
    count: int = Field(ModuleConfig.DEFAULT_SAMPLE_COUNT, ge=0)
    den_max: int = Field(ModuleConfig.DEFAULT_DEN_MAX, ge=1)
    num_max: int = Field(ModuleConfig.DEFAULT_NUM_MAX, ge=0)
    seed: int = ModuleConfig.DEFAULT_SEED


class RunConfig(BaseModel):
    command: str = "verify"
    checks: List[str] = Field(default_factory=lambda: ["all"])
    p_min: int = Field(ModuleConfig.DEFAULT_P_MIN, ge=3)
    p_max: int = Field(ModuleConfig.DEFAULT_P_MAX, ge=3)
    precision: int = Field(ModuleConfig.DEFAULT_PRECISION, ge=ModuleConfig.MIN_RUN_PRECISION)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    jobs: int = Field(1, ge=1)
    format: ReportFormat = ReportFormat.JSON
    output: Optional[str] = None  # None: standard output
    timing: bool = True

    @model_validator(mode="after")
    def check_range(self) -> "RunConfig":
        if self.p_min > self.p_max:
            raise ValueError(f"p_min ({self.p_min}) must not exceed p_max ({self.p_max})")
        if self.p_max > ModuleConfig.MAX_PRIME:
            raise ValueError(f"p_max beyond {ModuleConfig.MAX_PRIME} is not supported")
        return self


# --- Results ---
class CheckResult(BaseModel):
    check_id: str
    kind: CheckKind
    p: int
    a: str = ""  # sampled parameter, "k=<n>" for per-index checks, empty when parameter-free
    t: int
    lhs: str  # residue modulo p^t, decimal
    rhs: str
    passed: bool = Field(..., alias="pass")
    status: CheckStatus
    micros: Optional[int] = None

    model_config = ConfigDict(populate_by_name=True, use_enum_values=True)

    def record(self, timing: bool = True) -> dict:
        """The report row, keyed by the report field names in order."""
        data = self.model_dump(by_alias=True)
        if not timing:
            data["micros"] = None
        return {name: data[name] for name in ModuleConfig.REPORT_FIELDS}


class RunSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    consistent: int = 0
    refuted: int = 0
    skipped: int = 0
    exit_code: int = 0


class Report(BaseModel):
    config: RunConfig
    results: List[CheckResult] = Field(default_factory=list)
    summary: RunSummary = Field(default_factory=RunSummary)


class CertificateVerdict(BaseModel):
    cert_id: str
    reading: str = ""
    verified: bool
    method: str  # "symbolic" or "numeric"
    notice: Optional[str] = None
