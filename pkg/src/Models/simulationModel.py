from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from src.Models.forecastModel import PTU_HORAS, CopulaSpec
from src.Utils.errors import DataError

if TYPE_CHECKING:
    from src.Services.Forecast.forecastStoreService import ForecastStore

TOLERANCIA_PV = 1e-9


@dataclass(frozen=True, eq=False)
class PlantSpec:
    """Planta PV: série realizada (MWh por PTU, índice UTC) e previsões por emissão."""
    name: str
    capacity: float
    pv_series: pd.Series
    forecast_store: ForecastStore

    def __post_init__(self):
        if not self.capacity > 0:
            raise DataError(f"Capacidade da planta '{self.name}' deve ser > 0")
        valores = self.pv_series.to_numpy(dtype=float)
        limite = self.capacity * PTU_HORAS
        fora = np.flatnonzero((valores < -TOLERANCIA_PV) | (valores > limite + TOLERANCIA_PV) | ~np.isfinite(valores))
        if fora.size:
            ts = self.pv_series.index[fora[0]]
            raise DataError(f"PV da planta '{self.name}' fora de [0, {limite}] MWh em {ts}", None, None, "pv")


@dataclass(frozen=True, eq=False)
class AggregationSpec:
    plants: list[PlantSpec]
    # correlação entre plantas para a soma dos cenários; None = erros independentes
    cross_plant_copula: CopulaSpec | None = None
    aggregate_store: ForecastStore | None = None
    n_members: int = 100

    def __post_init__(self):
        if not self.plants:
            raise DataError("A agregação precisa de pelo menos uma planta")


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """Registros por PTU (posições, liquidação, estado da bateria, diagnósticos) e metadados.

    Os DataFrames não devem ser alterados depois de construídos.
    """
    ptus: pd.DataFrame
    soc_trace: pd.DataFrame
    metadata: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return self.metadata.get("label", "")

    @property
    def contentTrace(self) -> np.ndarray:
        return self.soc_trace["content"].to_numpy(dtype=float)

    @property
    def period(self) -> tuple[pd.Timestamp, pd.Timestamp]:
        inicio = self.ptus["timestamp"].iloc[0]
        fim = self.ptus["timestamp"].iloc[-1] + pd.Timedelta(minutes=30)
        return inicio, fim

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(self.ptus.to_csv(index=False).encode("utf-8"))
        h.update(self.soc_trace.to_csv(index=False).encode("utf-8"))
        return h.hexdigest()


@dataclass(frozen=True)
class SettlementTotals:
    revenue: float
    penalized_revenue: float
    aging_cost: float
    imbalance_penalty: float
    absolute_imbalance: float
    day_ahead_energy: float
    delivered_energy: float
    n_ptus: int
