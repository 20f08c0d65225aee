import logging

import numpy as np
import pandas as pd

from src.Models.forecastModel import CopulaSpec
from src.Services.Forecast.copulaService import fitCopula
from src.Services.Forecast.forecastStoreService import ForecastStore
from src.Utils.errors import DomainError
from src.Utils.validators import PTU

logger = logging.getLogger(__name__)


class CopulaCalibrator:
    """Cópula entre lead times, recalibrada com os PITs das previsões já realizadas.

    Uma linha por emissão cujos alvos do horizonte inteiro já foram entregues; até
    haver linhas suficientes vale a cópula exponencial.
    """

    def __init__(self, store: ForecastStore, leitor_pv, horizonte: int, metodo: str, decaimento: float,
                 inicio_historico: pd.Timestamp):
        self.store = store
        self.leitor_pv = leitor_pv
        self.horizonte = horizonte
        self.metodo = metodo
        self.decaimento = decaimento
        self._proxima = inicio_historico
        self._linhas: list[np.ndarray] = []
        self._ajustada: CopulaSpec | None = None

    def _linhaPit(self, emissao: pd.Timestamp, now: pd.Timestamp) -> np.ndarray | None:
        linha = np.empty(self.horizonte)
        for k in range(self.horizonte):
            # lead k + 1: a emissão não cobre a PTU que começa nela
            alvo = emissao + (k + 1) * PTU
            if self.store.latestIssue(alvo, emissao) != emissao:
                return None
            linha[k] = self.store.latest(alvo, emissao).pit(self.leitor_pv(alvo, now))
        return linha

    def refit(self, now: pd.Timestamp):
        if self.metodo != "fitted":
            return
        limite = now - (self.horizonte + 1) * PTU
        while self._proxima <= limite:
            linha = self._linhaPit(self._proxima, now)
            if linha is not None:
                self._linhas.append(linha)
            self._proxima += PTU
        if len(self._linhas) >= 2:
            try:
                self._ajustada = fitCopula(np.vstack(self._linhas))
            except DomainError as e:
                logger.warning(f"Falha ao ajustar a cópula, mantendo a anterior: {e}")
            else:
                logger.debug(f"Cópula recalibrada com {len(self._linhas)} emissões")

    def copula(self, dimensao: int) -> CopulaSpec:
        if self.metodo == "identity":
            return CopulaSpec.identity(dimensao)
        if self.metodo == "fitted" and self._ajustada is not None and self._ajustada.dimension >= dimensao:
            return CopulaSpec(self._ajustada.correlation[:dimensao, :dimensao])
        return CopulaSpec.exponential(dimensao, self.decaimento)
