"""
Serialized records shared by the library and the CLI.

Exact rationals travel as ``"p/q"`` strings; everything else is plain JSON.
"""

from fractions import Fraction
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, PlainSerializer, PlainValidator

SCHEMA_VERSION = 1


def _to_fraction(value: Union[Fraction, int, str]) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"expected an exact rational (Fraction, int or 'p/q'), got {type(value).__name__}")


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


ExactFraction = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(_fraction_str, return_type=str),
]


class SpectrumRecord(BaseModel):
    """Versioned serialization of a normalized Laplacian spectrum."""

    schema_version: Literal[1] = SCHEMA_VERSION
    graph6: Optional[str] = None
    n: int
    eigenvalues: List[float]  # ascending
    max_residual: float
    component_count: int


class CertificateRecord(BaseModel):
    """Self-contained certificate: enough to re-verify with only the Laplacian formula.

    Attributes:
    - graph6: The certified graph.
    - method: Certificate method tag.
    - argument: Which construction produced the witness.
    - pair: The non-adjacent witness pair, if any.
    - witness: Witness values on the full vertex set.
    - bound: Target lower bound, as a float.
    - exact_bound: The same bound as a rational, when it is rational.
    - rayleigh: Rayleigh quotient claimed for the witness.
    - slacks: Pointwise audit slacks keyed by vertex.
    - component_construction: True when the witness lives on one component of a
      disconnected graph and the bound follows from monotonicity in n.
    """

    schema_version: Literal[1] = SCHEMA_VERSION
    graph6: str
    method: str
    argument: str
    pair: Optional[Tuple[int, int]] = None
    witness: List[float]
    bound: float
    exact_bound: Optional[ExactFraction] = None
    rayleigh: float
    slacks: Dict[int, float] = Field(default_factory=dict)
    component_construction: bool = False
    note: Optional[str] = None


class Violation(BaseModel):
    """A claim that failed on a specific graph."""

    graph6: str
    claim: str
    observed: str
    expected: str


class ExtrapolationCandidate(BaseModel):
    """A graph with d_min > (n-1)/2 whose largest eigenvalue is below the minimum-degree formula."""

    graph6: str
    n: int
    d_min: int
    lambda_n: float
    formula: float


class SweepReport(BaseModel):
    """Outcome of an exhaustive or randomized verification sweep.

    Counts are additive, so partial reports from workers merge by :meth:`merge`.
    """

    schema_version: Literal[1] = SCHEMA_VERSION
    mode: Literal["exhaustive", "random"] = "exhaustive"
    n_range: Tuple[int, int]
    checks: List[str]
    filters: List[str] = Field(default_factory=lambda: ["min_degree>=1"])
    graphs_enumerated: int = 0
    graphs_scanned: int = 0
    connected: int = 0
    violations: List[Violation] = Field(default_factory=list)
    equality_census: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    worst_slack: Optional[float] = None
    thm3_extrapolation_candidates: int = 0
    thm3_extrapolation_examples: List[ExtrapolationCandidate] = Field(default_factory=list)
    runtime: float = 0.0
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def census_total(self, n: int) -> int:
        return sum(self.equality_census.get(str(n), {}).values())

    def merge(self, other: "SweepReport", max_examples: int = 20) -> "SweepReport":
        """Sum counts and concatenate findings; runtime is left to the caller."""
        census = {n: dict(kinds) for n, kinds in self.equality_census.items()}
        for n, kinds in other.equality_census.items():
            bucket = census.setdefault(n, {})
            for kind, count in kinds.items():
                bucket[kind] = bucket.get(kind, 0) + count
        slacks = [s for s in (self.worst_slack, other.worst_slack) if s is not None]
        return self.model_copy(
            update={
                "graphs_enumerated": self.graphs_enumerated + other.graphs_enumerated,
                "graphs_scanned": self.graphs_scanned + other.graphs_scanned,
                "connected": self.connected + other.connected,
                "violations": self.violations + other.violations,
                "equality_census": census,
                "worst_slack": min(slacks) if slacks else None,
                "thm3_extrapolation_candidates": self.thm3_extrapolation_candidates
                + other.thm3_extrapolation_candidates,
                "thm3_extrapolation_examples": (
                    self.thm3_extrapolation_examples + other.thm3_extrapolation_examples
                )[:max_examples],
            }
        )
