from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.utils.logging import get_logger

logger = get_logger(__name__)


class BaseSchema(BaseModel):
    model_config = ConfigDict(
        frozen=True,  # values are shared between sweeps
        str_strip_whitespace=True,
        populate_by_name=True,  # field names and file aliases both accepted
        extra="forbid",
    )


class TwistProfile(BaseSchema):
    """Global model parameters of the twist region and the fibration."""

    fiber_genus: int = Field(..., alias="genus", description="Genus g(F) of the fibre")
    degree_bound: int = Field(..., alias="degree", description="Degree bound Q")
    fiber_area: float = Field(..., alias="fiber_area", description="Fibre area of omega_X")
    annulus_half_width: float = Field(
        10.0, alias="lambda", description="Half-width lambda of the twist annulus"
    )

    @field_validator("fiber_genus")
    def validate_fiber_genus(cls, v):
        if v < 2:
            raise ValueError("Fibre genus must be at least 2.")
        return v

    @field_validator("degree_bound")
    def validate_degree_bound(cls, v):
        if v < 1:
            raise ValueError("Degree bound must be a positive integer.")
        return v

    @field_validator("fiber_area", "annulus_half_width")
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError("Value must be positive.")
        return v

    @model_validator(mode="after")
    def validate_hypotheses(self):
        if self.fiber_area <= self.degree_bound:
            raise ValueError(
                f"Fibre area {self.fiber_area} must exceed the degree bound {self.degree_bound}."
            )
        if self.degree_bound == self.fiber_genus - 1:
            raise ValueError(
                f"Degree bound {self.degree_bound} must differ from g(F) - 1 = {self.fiber_genus - 1}."
            )
        return self

    @classmethod
    def default_for(cls, genus: int, degree: int, **kwargs) -> "TwistProfile":
        """Profile with fibre area 4Q unless given."""
        kwargs.setdefault("fiber_area", 4.0 * degree)
        return cls(fiber_genus=genus, degree_bound=degree, **kwargs)


class MorseConfig(BaseSchema):
    """Census of interior critical points of the perturbing Morse function, by Hessian type."""

    n_positive: int = Field(0, ge=0, alias="morse_positive", description="Points with positive definite Hessian")
    n_negative: int = Field(0, ge=0, alias="morse_negative", description="Points with negative definite Hessian")
    n_saddle: int = Field(0, ge=0, alias="morse_saddle", description="Saddle points")

    @property
    def positive_labels(self) -> tuple[str, ...]:
        return tuple(f"p{i}" for i in range(1, self.n_positive + 1))

    @property
    def negative_labels(self) -> tuple[str, ...]:
        return tuple(f"n{i}" for i in range(1, self.n_negative + 1))

    @property
    def saddle_labels(self) -> tuple[str, ...]:
        return tuple(f"s{i}" for i in range(1, self.n_saddle + 1))


class CurveData(BaseSchema):
    """Abstract descriptor of a holomorphic curve in the cobordism."""

    genus: int = Field(..., ge=0)
    hyperbolic_ends: int = Field(0, ge=0)
    q_positive_ends: int = Field(0, ge=0)
    q_negative_mult: int = Field(0, ge=0)
    double_points: int = Field(0, ge=0)
    degree: int = Field(..., ge=0)
    fiber_mult: int = 0

    @model_validator(mode="after")
    def validate_end_budget(self):
        ends = self.hyperbolic_ends + self.q_positive_ends + self.q_negative_mult
        if ends > self.degree:
            raise ValueError(f"{ends} ends cannot fit in degree {self.degree}.")
        return self

    @property
    def is_special_plane(self) -> bool:
        return (
            self.genus == 0
            and self.hyperbolic_ends == 0
            and self.q_positive_ends == 0
            and self.q_negative_mult == 1
            and self.double_points == 0
            and self.degree == 1
            and self.fiber_mult == 0
        )


class SearchCaps(BaseSchema):
    max_genus: int = Field(3, ge=0)
    max_double_points: int = Field(3, ge=0)
    max_fiber_mult: int = Field(2, ge=0)


class SelfCheckRanges(BaseSchema):
    """Sweep ranges of the self-check suite."""

    max_degree: int = Field(8, ge=0, description="Largest degree Q of exhaustive index sweeps")
    morse_degree: int = Field(5, ge=0, description="Largest degree swept with interior Morse points")
    morse_per_type: int = Field(2, ge=0, description="Largest number of interior points per Hessian type")
    max_denominator: int = Field(12, ge=1, description="Largest q of the intersection oracle sweep")
    max_leg: int = Field(10, ge=1)
    max_genus: int = Field(8, ge=1)
    orbit_max_q: int = Field(8, ge=2)
    brute_force_degree: int = Field(5, ge=0)
    admissibility_degree: int = Field(6, ge=1)
    pullback_points: int = Field(100, ge=1)
    random_trials: int = Field(200, ge=1)
    seed: int = 0

    @classmethod
    def small(cls) -> "SelfCheckRanges":
        return cls(
            max_degree=2,
            morse_degree=2,
            morse_per_type=1,
            max_denominator=4,
            max_leg=3,
            max_genus=3,
            orbit_max_q=3,
            brute_force_degree=2,
            admissibility_degree=2,
            pullback_points=10,
            random_trials=20,
        )


class RunConfig(BaseSchema):
    """Resolved command-line configuration."""

    genus: int = Field(3, alias="genus")
    degree: int = Field(2, alias="degree")
    fiber_area: Optional[float] = Field(None, alias="fiber_area")
    annulus_half_width: float = Field(10.0, alias="lambda")
    morse_positive: int = Field(0, ge=0)
    morse_negative: int = Field(0, ge=0)
    morse_saddle: int = Field(0, ge=0)
    output_format: Literal["json", "csv", "table"] = Field("json", alias="format")
    orbit_tol: float = Field(1e-9, gt=0)
    pullback_tol: float = Field(1e-6, gt=0)
    enumeration_cap: int = Field(10**7, ge=1, alias="cap")
    log_level: str = Field("WARNING", alias="log_level")

    @field_validator("log_level")
    def validate_log_level(cls, v):
        valid_levels = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]
        choice_mapping = {choice.lower(): choice for choice in valid_levels}
        if v.lower() not in choice_mapping:
            raise ValueError(f"log_level must be one of {valid_levels}.")
        if v not in valid_levels:
            logger.warning(f"log_level '{v}' is not in the standard casing. Using '{choice_mapping[v.lower()]}' instead.")
        return choice_mapping[v.lower()]

    @property
    def resolved_fiber_area(self) -> float:
        return self.fiber_area if self.fiber_area is not None else 4.0 * self.degree

    def profile(self) -> TwistProfile:
        return TwistProfile(
            fiber_genus=self.genus,
            degree_bound=self.degree,
            fiber_area=self.resolved_fiber_area,
            annulus_half_width=self.annulus_half_width,
        )

    def morse(self) -> MorseConfig:
        return MorseConfig(
            n_positive=self.morse_positive,
            n_negative=self.morse_negative,
            n_saddle=self.morse_saddle,
        )
