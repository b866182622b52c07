"""Storage I/O implied by broadcast versus shuffle joins.

A broadcast join ships the build table to every worker, so fleet-wide
storage reads scale as N x build bytes. A shuffle join reads each
table once and repartitions over the network instead. These are pure
byte and request calculators, no join is ever executed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .units import MB, ceil_div, exact_fraction

DEFAULT_BROADCAST_THRESHOLD = 100 * MB

STRATEGIES = ("broadcast", "shuffle", "auto")


@dataclass(frozen=True)
class JoinSpec:
    """One join: table sizes, fleet width, and strategy choice."""

    build_bytes: int
    probe_bytes: int
    workers: int
    strategy: str = "auto"
    broadcast_threshold: int = DEFAULT_BROADCAST_THRESHOLD

    def __post_init__(self) -> None:
        if self.build_bytes < 0:
            raise ValueError(f"build bytes must be >= 0, got {self.build_bytes}")
        if self.probe_bytes < 0:
            raise ValueError(f"probe bytes must be >= 0, got {self.probe_bytes}")
        if self.workers < 1:
            raise ValueError(f"worker count must be >= 1, got {self.workers}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.broadcast_threshold < 0:
            raise ValueError(f"broadcast threshold must be >= 0, got {self.broadcast_threshold}")


@dataclass(frozen=True)
class JoinIoPlan:
    """Storage traffic of one join under a chosen strategy.

    ``network_bytes`` is informational only (shuffle repartition
    traffic); it is not storage I/O and is never priced.
    """

    strategy: str
    storage_bytes: int
    requests: int
    duplicated_bytes: int
    network_bytes: int


def plan_join(spec: JoinSpec, request_bytes: int) -> JoinIoPlan:
    """Resolve the strategy and account its storage bytes and requests.

    Broadcast reads the build table once per worker plus the probe
    table once; shuffle reads each table exactly once. ``auto`` picks
    broadcast when the build table is at or under the threshold.
    """
    if request_bytes <= 0:
        raise ValueError(f"request bytes must be > 0, got {request_bytes}")
    strategy = spec.strategy
    if strategy == "auto":
        strategy = "broadcast" if spec.build_bytes <= spec.broadcast_threshold else "shuffle"
    if strategy == "broadcast":
        storage = spec.workers * spec.build_bytes + spec.probe_bytes
        network = 0
    else:
        storage = spec.build_bytes + spec.probe_bytes
        network = spec.build_bytes + spec.probe_bytes
    return JoinIoPlan(
        strategy=strategy,
        storage_bytes=storage,
        requests=ceil_div(storage, request_bytes),
        duplicated_bytes=storage - (spec.build_bytes + spec.probe_bytes),
        network_bytes=network,
    )


def waste_fraction(n: int) -> Fraction:
    """Fraction of broadcast build-table reads that are duplicates, 1 - 1/n.

    Returned as an exact rational so 200 workers give exactly 199/200.
    """
    if n < 1:
        raise ValueError(f"worker count must be >= 1, got {n}")
    return Fraction(n - 1, n)


@dataclass(frozen=True)
class FleetParams:
    """Fleet-wide broadcast volume drivers."""

    queries_per_day: int
    broadcast_fraction: float | Fraction
    workers: int
    build_bytes: int

    def __post_init__(self) -> None:
        if self.queries_per_day < 0:
            raise ValueError(f"queries per day must be >= 0, got {self.queries_per_day}")
        frac = exact_fraction(self.broadcast_fraction)
        if not 0 <= frac <= 1:
            raise ValueError(f"broadcast fraction must be in [0, 1], got {self.broadcast_fraction}")
        if self.workers < 1:
            raise ValueError(f"worker count must be >= 1, got {self.workers}")
        if self.build_bytes < 0:
            raise ValueError(f"build bytes must be >= 0, got {self.build_bytes}")


def fleet_aggregate(params: FleetParams) -> int:
    """Daily broadcast read volume: workers x build bytes x queries x fraction.

    Exact integer arithmetic; the fraction is taken at its decimal
    face value, so 0.20 is exactly one fifth.
    """
    frac = exact_fraction(params.broadcast_fraction)
    total = Fraction(params.workers * params.build_bytes * params.queries_per_day) * frac
    if total.denominator != 1:
        # Fractions like 1/3 of an odd count cannot land on a whole
        # byte; round down and stay conservative.
        return int(total)
    return total.numerator


def fleet_api_calls(bytes_per_day: int, request_bytes: int) -> int:
    """Requests per day needed to move a byte volume at a given request size."""
    if bytes_per_day < 0:
        raise ValueError(f"bytes per day must be >= 0, got {bytes_per_day}")
    if request_bytes <= 0:
        raise ValueError(f"request bytes must be > 0, got {request_bytes}")
    return ceil_div(bytes_per_day, request_bytes)
