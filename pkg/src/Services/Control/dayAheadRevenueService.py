"""Lance day-ahead que maximiza a receita penalizada esperada.

A parte da bateria entra como energia firme (a bateria entrega o ofertado); só a
parte PV carrega incerteza e é liquidada a preços de desequilíbrio.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.Models.batteryModel import BatteryParams, BatteryState
from src.Models.controlModel import MpcConfig
from src.Models.forecastModel import PTU_HORAS, ForecastDistribution, ScenarioSet
from src.Models.marketModel import PriceRecord
from src.Services.Control.biddingService import newsvendorFractile
from src.Services.Control.lpBuilderService import (
    MOTION_PENALTY,
    MontadorLp,
    blocoBateria,
    lpPrices,
    terminalValue,
)
from src.Services.Control.lpSolverService import solveLp
from src.Services.Control.realtimeService import effectiveScenarios
from src.Utils.errors import DomainError, SolverError

logger = logging.getLogger(__name__)

PTUS_DIA = 48


@dataclass(frozen=True)
class DayAheadPlan:
    pv_bids: list[float]
    bess_bids: list[float]
    expected_objective: float


def _limiteLance(scenarios: ScenarioSet) -> float:
    if scenarios.plant_capacity is not None:
        return scenarios.plant_capacity * PTU_HORAS
    return float(scenarios.values.max())


def expectedPenalizedRevenue(scenarios: ScenarioSet, price_forecast: list[PriceRecord], pv_bids) -> float:
    """E[Σ_t π_s·b_t + π_B·(PV_t − b_t)] sem bateria, com os preços usados no LP."""
    precos = np.array([lpPrices(p) for p in price_forecast])
    spot, pi_pos, pi_neg = precos[:, 0], precos[:, 1], precos[:, 2]
    lances = np.asarray(pv_bids, dtype=float)
    desvio = scenarios.values[:, : lances.size] - lances[None, :]
    liquidado = np.where(desvio > 0, pi_pos * desvio, pi_neg * desvio)
    return float(np.sum(spot * lances) + np.sum(scenarios.weights @ liquidado))


def _semBateria(scenarios: ScenarioSet, price_forecast: list[PriceRecord], passos: int) -> DayAheadPlan:
    # o LP se separa por PTU: fractil do newsvendor de cada marginal
    limite = _limiteLance(scenarios)
    lances = []
    for t in range(passos):
        dist = ForecastDistribution.fromSamples(scenarios.values[:, t], limite / PTU_HORAS, t)
        tau = newsvendorFractile(price_forecast[t])
        lances.append(dist.median() if tau is None else dist.quantile(tau))
    objetivo = expectedPenalizedRevenue(scenarios.truncate(passos), price_forecast[:passos], lances)
    return DayAheadPlan(lances, [0.0] * passos, objetivo)


def planDayAheadRevenue(scenarios: ScenarioSet, price_forecast: list[PriceRecord], state: BatteryState | None,
                        params: BatteryParams | None, config: MpcConfig) -> DayAheadPlan:
    scenarios = effectiveScenarios(scenarios, config)
    passos = min(scenarios.horizonSteps, len(price_forecast))
    if passos < 1:
        raise DomainError("Janela day-ahead vazia")
    if passos < PTUS_DIA:
        logger.debug(f"Janela day-ahead com {passos} PTUs")
    if params is None:
        return _semBateria(scenarios, price_forecast, passos)

    pv = scenarios.values[:, :passos]
    n_cenarios = pv.shape[0]
    precos = np.array([lpPrices(p) for p in price_forecast[:passos]])
    spot, pi_pos, pi_neg = precos[:, 0], precos[:, 1], precos[:, 2]

    montador = MontadorLp("da_revenue")
    lances = montador.variaveis("b", passos, 0.0, _limiteLance(scenarios), -spot)
    estado = state if state is not None else params.initialState()
    bateria = blocoBateria(montador, estado, params, pv.min(axis=0))
    positivo = montador.variaveis("p", n_cenarios * passos, 0.0, np.inf).reshape(n_cenarios, passos)
    negativo = montador.variaveis("n", n_cenarios * passos, 0.0, np.inf).reshape(n_cenarios, passos)

    # p − n + b = PV por cenário; a parte da bateria não gera desequilíbrio
    b = np.broadcast_to(lances, (n_cenarios, passos))
    montador.igualdades(np.column_stack([positivo.ravel(), negativo.ravel(), b.ravel()]), [1.0, -1.0, 1.0], pv.ravel())

    w = scenarios.weights[:, None]
    montador.adicionarCusto(positivo.ravel(), (-w * pi_pos[None, :]).ravel())
    montador.adicionarCusto(negativo.ravel(), (w * pi_neg[None, :]).ravel())
    movimento = params.agingCostPerMwh + MOTION_PENALTY
    montador.adicionarCusto(bateria.descarga, -spot + movimento)
    montador.adicionarCusto(bateria.carga, spot + movimento)
    montador.adicionarCusto(bateria.conteudo[-1], -terminalValue(price_forecast[:passos], params))

    problema = montador.problema()
    solucao = solveLp(problema, config.debug_lp_dir)
    if not solucao.isOptimal:
        # ilimitado só com previsão patológica de energia grátis: nunca silencioso
        raise SolverError(f"LP day-ahead sem ótimo: {solucao.status.value} ({solucao.message})")

    x = solucao.x
    lances_pv = [float(v) for v in x[lances]]
    lances_bess = [float(v) for v in x[bateria.descarga] - x[bateria.carga]]
    logger.debug(f"Lance day-ahead: PV {sum(lances_pv):.3f} MWh, bateria {sum(lances_bess):.3f} MWh")
    return DayAheadPlan(lances_pv, lances_bess, -solucao.objective)


def dayAheadBidRevenue(scenarios: ScenarioSet, price_forecast: list[PriceRecord], state: BatteryState | None,
                       params: BatteryParams | None, config: MpcConfig) -> tuple[list[float], list[float]]:
    plano = planDayAheadRevenue(scenarios, price_forecast, state, params, config)
    return plano.pv_bids, plano.bess_bids
