"""Report models for counting experiments and CLI envelopes."""

from typing import Any

from pydantic import BaseModel, Field, field_serializer


class CountReport(BaseModel):
    """One counting experiment: exact count against its predicted main term."""

    model_config = {"populate_by_name": True}

    pair: str
    param_name: str = "s"
    param: float
    count: int = Field(ge=0)
    main_term: float
    second_order: float | None = None
    ratio: float
    residual: float | None = None
    extra: dict[str, Any] = Field(default_factory=dict)

    @field_serializer("count")
    def _count_as_decimal(self, count: int) -> str:
        # exact integers never pass through a float
        return str(count)

    @classmethod
    def build(
        cls,
        pair: str,
        param: float,
        count: int,
        main_term: float,
        param_name: str = "s",
        second_order: float | None = None,
        extra: dict[str, Any] | None = None,
    ) -> "CountReport":
        """Create a report, filling ratio and residual from the count and predictions.

        Args:
            pair: Name of the counted pair or experiment
            param: Threshold (s, N or n)
            count: Exact count
            main_term: Leading-order prediction
            param_name: Name of the threshold parameter
            second_order: Optional prediction including the next term
            extra: Additional experiment-specific values

        Returns:
            The populated report
        """
        reference = second_order if second_order is not None else main_term
        return cls(
            pair=pair,
            param_name=param_name,
            param=param,
            count=count,
            main_term=main_term,
            second_order=second_order,
            ratio=count / main_term if main_term else float("nan"),
            residual=count - reference,
            extra=extra or {},
        )


class AmbiguityReport(BaseModel):
    """Classification of a modular group element."""

    matrix: tuple[int, int, int, int]
    hyperbolic: bool
    first_kind: bool
    second_kind: bool
    reciprocal: bool | None = None
    conjugate_first_kind: bool | None = None
    conjugate_second_kind: bool | None = None
    proper_power: bool | None = None
    word: str | None = None


class ReportEnvelope(BaseModel):
    """Envelope wrapping every JSON document the CLI writes."""

    tool_version: str
    command: str
    params: dict[str, Any] = Field(default_factory=dict)
    results: Any = None
    timing_ms: float = 0.0
    format_version: int = 1


class ErrorEnvelope(BaseModel):
    """JSON error object written when an invariant check fails."""

    tool_version: str
    command: str
    error: str
    kind: str
