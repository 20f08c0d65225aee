from dataclasses import dataclass

import pandas as pd

from src.Models.controlModel import Mode


@dataclass(frozen=True)
class Strategy:
    use_intraday: bool
    mode: Mode

    @property
    def label(self) -> str:
        intraday = "with ID" if self.use_intraday else "without ID"
        return f"{self.mode.value}, {intraday}"


STRATEGIES = (
    Strategy(False, Mode.STOCHASTIC),
    Strategy(False, Mode.DETERMINISTIC),
    Strategy(True, Mode.STOCHASTIC),
    Strategy(True, Mode.DETERMINISTIC),
)
BENCHMARK_STRATEGY = STRATEGIES[0]


@dataclass(frozen=True)
class SizingReport:
    strategy: str
    required_capacity_mwh: float
    required_capacity_mwh_per_mwp: float
    reduction_vs_benchmark: float
    imbalance_reduction: float


@dataclass(frozen=True)
class RevenueReport:
    strategy: str
    revenue: float
    penalized_revenue: float
    aging_cost: float
    revenue_delta: float


@dataclass(frozen=True)
class StudyInputs:
    """Tudo que uma rodada precisa além da estratégia: planta(s), preços, período e semente."""
    agg: object
    prices: pd.DataFrame
    period_start: pd.Timestamp
    period_end: pd.Timestamp
    seed: int
    config_digest: str | None = None
