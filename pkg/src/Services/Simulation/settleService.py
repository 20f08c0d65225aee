"""Totais de liquidação recalculados a partir dos registros por PTU de um resultado."""
import numpy as np
import pandas as pd

from src.Models.marketModel import MarketPosition, PriceRecord
from src.Models.simulationModel import SettlementTotals, SimulationResult
from src.Services.Market.settlementService import settlePtu
from src.Utils.errors import DataError


def _precosDoResultado(ptus: pd.DataFrame) -> list[PriceRecord]:
    return [
        PriceRecord(float(s), float(p), float(n))
        for s, p, n in zip(ptus["spot"], ptus["pos_imbalance_price"], ptus["neg_imbalance_price"])
    ]


def settle(result: SimulationResult, prices: list[PriceRecord] | None = None) -> SettlementTotals:
    ptus = result.ptus
    precos = _precosDoResultado(ptus) if prices is None else list(prices)
    if len(precos) != len(ptus):
        raise DataError(f"Esperados {len(ptus)} registros de preço, recebidos {len(precos)}")

    receita = penalizada = envelhecimento = penalidade = absoluto = 0.0
    for linha, preco in zip(ptus.itertuples(index=False), precos):
        posicao = MarketPosition(
            int(linha.ptu_index), float(linha.day_ahead_pv_part), float(linha.day_ahead_bess_part),
            float(linha.intraday_energy), float(linha.intraday_price),
        )
        registro = settlePtu(float(linha.delivered_pv), float(linha.delivered_bess), posicao, preco, float(linha.aging_cost))
        receita += registro.revenue
        penalizada += registro.penalized_revenue
        envelhecimento += registro.aging_cost
        absoluto += abs(registro.imbalance)
        # perda frente a liquidar o desvio ao spot
        if registro.imbalance > 0:
            penalidade += registro.imbalance * (preco.spot - preco.pos_imbalance_price)
        elif registro.imbalance < 0:
            penalidade += registro.imbalance * (preco.spot - preco.neg_imbalance_price)

    return SettlementTotals(
        revenue=receita,
        penalized_revenue=penalizada,
        aging_cost=envelhecimento,
        imbalance_penalty=penalidade,
        absolute_imbalance=absoluto,
        day_ahead_energy=float(np.sum(ptus["day_ahead_energy"])),
        delivered_energy=float(np.sum(ptus["delivered_pv"] + ptus["delivered_bess"])),
        n_ptus=len(ptus),
    )
