"""Controle MPC da bateria em tempo real.

Comandos da bateria são compartilhados entre os cenários (primeiro estágio); só as
folgas de desequilíbrio positivo/negativo são por cenário. Retorna-se o primeiro
comando do horizonte.
"""
import logging

import numpy as np

from src.Models.batteryModel import BatteryParams, BatteryState
from src.Models.controlModel import MpcConfig, RealtimePlan
from src.Models.forecastModel import ScenarioSet
from src.Models.marketModel import MarketPosition, PriceRecord
from src.Services.Control.lpBuilderService import (
    MOTION_PENALTY,
    MontadorLp,
    blocoBateria,
    lpPrices,
    terminalValue,
)
from src.Services.Control.lpSolverService import solveLp
from src.Services.Forecast.scenarioService import expectedTrajectory
from src.Utils.errors import DomainError, SolverError

logger = logging.getLogger(__name__)

COMANDO_NULO = 1e-12


def effectiveScenarios(scenarios: ScenarioSet, config: MpcConfig) -> ScenarioSet:
    """Modo determinístico (ou n=1) usa a trajetória esperada como cenário único."""
    if config.effectiveScenarios == 1 and scenarios.nScenarios > 1:
        return ScenarioSet(expectedTrajectory(scenarios)[None, :], plant_capacity=scenarios.plant_capacity)
    return scenarios


def _horizonte(scenarios: ScenarioSet, positions: list[MarketPosition], config: MpcConfig, precos=None) -> int:
    passos = min(config.horizon_steps, scenarios.horizonSteps, len(positions))
    if precos is not None:
        passos = min(passos, len(precos))
    if passos < 1:
        raise DomainError("Horizonte vazio: sem cenários, posições ou preços para a janela")
    return passos


def _montarComum(label, state, params, scenarios, positions, passos):
    pv = scenarios.values[:, :passos]
    n_cenarios = pv.shape[0]
    montador = MontadorLp(label)
    bateria = blocoBateria(montador, state, params, pv.min(axis=0))

    positivo = montador.variaveis("p", n_cenarios * passos, 0.0, np.inf).reshape(n_cenarios, passos)
    negativo = montador.variaveis("n", n_cenarios * passos, 0.0, np.inf).reshape(n_cenarios, passos)

    # p − n − d + ch = PV + E_ID − E_c, por cenário e passo
    compromisso = np.array([pos.intraday_energy - pos.day_ahead_energy for pos in positions[:passos]])
    rhs = (pv + compromisso[None, :]).ravel()
    d = np.broadcast_to(bateria.descarga, (n_cenarios, passos))
    ch = np.broadcast_to(bateria.carga, (n_cenarios, passos))
    colunas = np.column_stack([positivo.ravel(), negativo.ravel(), d.ravel(), ch.ravel()])
    montador.igualdades(colunas, [1.0, -1.0, -1.0, 1.0], rhs)
    return montador, bateria, positivo, negativo


def _resolver(montador: MontadorLp, bateria, config: MpcConfig, constante: float, sinal: float) -> RealtimePlan:
    problema = montador.problema()
    solucao = solveLp(problema, config.debug_lp_dir)
    if not solucao.isOptimal:
        raise SolverError(f"LP '{problema.label}' sem ótimo: {solucao.status.value} ({solucao.message})")

    x = solucao.x
    comandos = x[bateria.descarga] - x[bateria.carga]
    comandos[np.abs(comandos) < COMANDO_NULO] = 0.0
    objetivo = sinal * (solucao.objective + constante)
    logger.debug(f"{problema.label}: primeiro comando {comandos[0]:.6f} MWh, objetivo {objetivo:.6f}")
    return RealtimePlan(commands=comandos, expected_objective=objetivo, content_plan=x[bateria.conteudo].copy())


def planRealtimeImbalance(state: BatteryState, params: BatteryParams, scenarios: ScenarioSet,
                          positions: list[MarketPosition], config: MpcConfig) -> RealtimePlan:
    """min Σ_s w_s Σ_t |desequilíbrio_{s,t}|; objetivo retornado em MWh esperados."""
    scenarios = effectiveScenarios(scenarios, config)
    passos = _horizonte(scenarios, positions, config)
    montador, bateria, positivo, negativo = _montarComum("rt_imbalance", state, params, scenarios, positions, passos)

    pesos = np.repeat(scenarios.weights, passos)
    montador.adicionarCusto(positivo.ravel(), pesos)
    montador.adicionarCusto(negativo.ravel(), pesos)
    montador.adicionarCusto(bateria.descarga, MOTION_PENALTY)
    montador.adicionarCusto(bateria.carga, MOTION_PENALTY)
    return _resolver(montador, bateria, config, 0.0, 1.0)


def realtimeControlImbalance(state: BatteryState, params: BatteryParams, scenarios: ScenarioSet,
                             positions: list[MarketPosition], config: MpcConfig) -> float:
    return planRealtimeImbalance(state, params, scenarios, positions, config).firstCommand


def planRealtimeRevenue(state: BatteryState, params: BatteryParams, scenarios: ScenarioSet,
                        positions: list[MarketPosition], price_forecast: list[PriceRecord],
                        config: MpcConfig) -> RealtimePlan:
    """max E[R'] com o proxy linear de envelhecimento e o valor terminal do conteúdo."""
    scenarios = effectiveScenarios(scenarios, config)
    passos = _horizonte(scenarios, positions, config, price_forecast)
    montador, bateria, positivo, negativo = _montarComum("rt_revenue", state, params, scenarios, positions, passos)

    precos = np.array([lpPrices(p) for p in price_forecast[:passos]])
    spot, pi_pos, pi_neg = precos[:, 0], precos[:, 1], precos[:, 2]
    invertidos = [p.ptu_index for p, preco in zip(positions[:passos], price_forecast[:passos]) if preco.isInverted]
    if invertidos:
        logger.debug(f"Preços invertidos substituídos pela média nas PTUs {invertidos}")

    w = scenarios.weights[:, None]
    # minimiza −R': −π_s(d − ch) + (π_s − π_+)p + (π_- − π_s)n + custo·(d + ch)
    montador.adicionarCusto(positivo.ravel(), (w * (spot - pi_pos)[None, :]).ravel())
    montador.adicionarCusto(negativo.ravel(), (w * (pi_neg - spot)[None, :]).ravel())
    movimento = params.agingCostPerMwh + MOTION_PENALTY
    montador.adicionarCusto(bateria.descarga, -spot + movimento)
    montador.adicionarCusto(bateria.carga, spot + movimento)
    montador.adicionarCusto(bateria.conteudo[-1], -terminalValue(price_forecast[:passos], params))

    # π_s·E[PV] não depende das decisões
    constante = -float(np.sum(scenarios.weights @ scenarios.values[:, :passos] * spot))
    return _resolver(montador, bateria, config, constante, -1.0)


def realtimeControlRevenue(state: BatteryState, params: BatteryParams, scenarios: ScenarioSet,
                           positions: list[MarketPosition], price_forecast: list[PriceRecord],
                           config: MpcConfig) -> float:
    return planRealtimeRevenue(state, params, scenarios, positions, price_forecast, config).firstCommand
