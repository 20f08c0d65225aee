"""Previsões probabilísticas indexadas por (target_time, issue_time)."""
import bisect
import logging
from collections import defaultdict

import numpy as np
import pandas as pd

from src.Models.forecastModel import ForecastDistribution, ptuOfDay
from src.Utils.errors import ForecastError

logger = logging.getLogger(__name__)

MAX_STALENESS = pd.Timedelta(hours=48)


class ForecastStore:
    def __init__(self, plant_capacity: float, max_staleness: pd.Timedelta = MAX_STALENESS):
        self.plant_capacity = plant_capacity
        self.max_staleness = max_staleness
        self._emissoes = defaultdict(list)
        self._distribuicoes = defaultdict(list)

    def add(self, issue_time: pd.Timestamp, target_time: pd.Timestamp, dist: ForecastDistribution):
        if issue_time > target_time:
            raise ForecastError(f"Previsão emitida ({issue_time}) após o alvo ({target_time})")
        emissoes = self._emissoes[target_time]
        pos = bisect.bisect_right(emissoes, issue_time)
        if pos and emissoes[pos - 1] == issue_time:
            self._distribuicoes[target_time][pos - 1] = dist
            return
        emissoes.insert(pos, issue_time)
        self._distribuicoes[target_time].insert(pos, dist)

    def latest(self, target_time: pd.Timestamp, asof: pd.Timestamp, strict: bool = False) -> ForecastDistribution:
        """Última emissão até `asof` (com `strict`, estritamente antes de `asof`)."""
        emissoes = self._emissoes.get(target_time)
        if not emissoes:
            raise ForecastError(f"Nenhuma previsão para {target_time}")
        busca = bisect.bisect_left if strict else bisect.bisect_right
        pos = busca(emissoes, asof)
        if pos == 0:
            raise ForecastError(f"Nenhuma previsão para {target_time} emitida até {asof}")
        if asof - emissoes[pos - 1] > self.max_staleness:
            raise ForecastError(f"Previsão para {target_time} emitida em {emissoes[pos - 1]} está velha demais em {asof}")
        return self._distribuicoes[target_time][pos - 1]

    def latestIssue(self, target_time: pd.Timestamp, asof: pd.Timestamp) -> pd.Timestamp | None:
        emissoes = self._emissoes.get(target_time, [])
        pos = bisect.bisect_right(emissoes, asof)
        return emissoes[pos - 1] if pos else None

    def targets(self) -> list[pd.Timestamp]:
        return sorted(self._emissoes)

    def entries(self):
        for alvo in self.targets():
            for emissao, dist in zip(self._emissoes[alvo], self._distribuicoes[alvo]):
                yield emissao, alvo, dist

    def __len__(self) -> int:
        return sum(len(v) for v in self._emissoes.values())

    @classmethod
    def fromFrame(cls, df: pd.DataFrame, colunas_valores: list[str], plant_capacity: float) -> "ForecastStore":
        store = cls(plant_capacity)
        valores = np.sort(df[colunas_valores].to_numpy(dtype=float), axis=1)
        limite = plant_capacity * 0.5
        valores = np.clip(valores, 0.0, limite)
        for emissao, alvo, linha in zip(df["issue_time"], df["target_time"], valores):
            store.add(emissao, alvo, ForecastDistribution(ptuOfDay(alvo), linha, plant_capacity))
        logger.debug(f"ForecastStore com {len(store)} distribuições")
        return store

    def toFrame(self) -> pd.DataFrame:
        linhas = []
        for emissao, alvo, dist in self.entries():
            linhas.append([emissao, alvo, *dist.sorted_values])
        largura = max((len(linha) - 2 for linha in linhas), default=0)
        colunas = ["issue_time", "target_time"] + [f"m{i + 1:02d}" for i in range(largura)]
        return pd.DataFrame(linhas, columns=colunas)
