"""Regras fechadas de oferta: mediana day-ahead, cancelamento intra-day e fractil do newsvendor."""
import logging

import pandas as pd

from src.Models.forecastModel import ForecastDistribution
from src.Models.marketModel import MarketPosition, PriceRecord
from src.Utils.errors import ForecastError, GateClosedError

logger = logging.getLogger(__name__)

INTRADAY_GATE = pd.Timedelta(minutes=30)
FRACTILE_EPSILON = 1e-6


def checkGateOpen(now: pd.Timestamp | None, delivery_start: pd.Timestamp | None):
    if now is None or delivery_start is None:
        return
    if now > delivery_start - INTRADAY_GATE:
        raise GateClosedError(f"Gate intra-day da PTU {delivery_start} fechou em {delivery_start - INTRADAY_GATE} (agora {now})")


def dayAheadBidImbalance(dists: list[ForecastDistribution | None], n_ptus: int | None = None) -> list[float]:
    if n_ptus is not None and len(dists) != n_ptus:
        raise ForecastError(f"Esperadas {n_ptus} distribuições, recebidas {len(dists)}")
    faltantes = [i for i, d in enumerate(dists) if d is None]
    if faltantes:
        raise ForecastError(f"Distribuição ausente para as PTUs {faltantes}")
    return [d.median() for d in dists]


def intradayBidImbalance(position: MarketPosition, updated_dist: ForecastDistribution,
                         now: pd.Timestamp | None = None, delivery_start: pd.Timestamp | None = None) -> float:
    checkGateOpen(now, delivery_start)
    return position.day_ahead_energy - updated_dist.median()


def newsvendorFractile(prices: PriceRecord, intraday_price: float | None = None) -> float | None:
    """τ = (π_ID − π_+)/(π_- − π_+), ε só nos extremos τ <= 0 e τ >= 1; None quando π_- <= π_+."""
    pi_id = prices.spot if intraday_price is None else intraday_price
    spread = prices.neg_imbalance_price - prices.pos_imbalance_price
    if spread <= 0:
        return None
    tau = (pi_id - prices.pos_imbalance_price) / spread
    if tau <= 0.0:
        return FRACTILE_EPSILON
    if tau >= 1.0:
        return 1.0 - FRACTILE_EPSILON
    return tau


def intradayBidRevenue(position: MarketPosition, updated_dist: ForecastDistribution, prices: PriceRecord,
                       now: pd.Timestamp | None = None, delivery_start: pd.Timestamp | None = None) -> float:
    checkGateOpen(now, delivery_start)
    tau = newsvendorFractile(prices)
    if tau is None:
        # sem concavidade com preços invertidos: não negocia
        return 0.0
    # a parte da bateria é entregue como ofertada; só a parte PV carrega incerteza
    return position.day_ahead_pv_part - updated_dist.quantile(tau)
