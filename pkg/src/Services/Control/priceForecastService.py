"""Previsão de preços por persistência para o MPC.

Preços de desequilíbrio de uma PTU só são conhecidos após o fim da entrega; o spot
de um dia é conhecido assim que o leilão do meio-dia anterior fecha.
"""
import logging

import pandas as pd

from src.Models.marketModel import PriceRecord
from src.Utils.errors import CausalityError, ForecastError
from src.Utils.validators import PTU

logger = logging.getLogger(__name__)

DAY_AHEAD_GATE = pd.Timedelta(hours=12)
DIAS_PERSISTENCIA = 7


def spotCleared(target_time: pd.Timestamp, now: pd.Timestamp) -> bool:
    """O leilão do dia de `target_time` fecha ao meio-dia do dia anterior."""
    return target_time.normalize() - DAY_AHEAD_GATE < now


def priceRevealed(target_time: pd.Timestamp, now: pd.Timestamp) -> bool:
    return target_time + PTU <= now


class PriceForecastService:
    def __init__(self, precos: pd.DataFrame):
        self._precos = {
            ts: PriceRecord(float(linha.spot), float(linha.pos_imbalance_price), float(linha.neg_imbalance_price))
            for ts, linha in zip(precos.index, precos.itertuples(index=False))
        }

    def _persistido(self, target_time: pd.Timestamp, now: pd.Timestamp, revelado) -> PriceRecord:
        for k in range(1, DIAS_PERSISTENCIA + 1):
            candidato = target_time - pd.Timedelta(days=k)
            if candidato in self._precos and revelado(candidato, now):
                return self._precos[candidato]
        # sem o mesmo horário na janela: último preço revelado
        ultimo = (now - PTU).floor(PTU)
        for _ in range(DIAS_PERSISTENCIA * 48):
            if ultimo in self._precos and revelado(ultimo, now):
                return self._precos[ultimo]
            ultimo -= PTU
        raise ForecastError(f"Sem histórico de preços revelados antes de {now}")

    def forecast(self, target_time: pd.Timestamp, now: pd.Timestamp) -> PriceRecord:
        desequilibrio = self._persistido(target_time, now, priceRevealed)
        if spotCleared(target_time, now) and target_time in self._precos:
            spot = self._precos[target_time].spot
        else:
            spot = self._persistido(target_time, now, spotCleared).spot
        return PriceRecord(spot, desequilibrio.pos_imbalance_price, desequilibrio.neg_imbalance_price)

    def forecastWindow(self, targets, now: pd.Timestamp) -> list[PriceRecord]:
        return [self.forecast(t, now) for t in targets]

    def realized(self, target_time: pd.Timestamp, now: pd.Timestamp) -> PriceRecord:
        if not priceRevealed(target_time, now):
            raise CausalityError(f"Preço de {target_time} ainda não revelado em {now}")
        try:
            return self._precos[target_time]
        except KeyError:
            raise ForecastError(f"Preço ausente para {target_time}") from None
