"""Contagem rainflow da trajetória de SOC e custo de envelhecimento por ciclos (curva de Wöhler)."""
import logging

import numpy as np
import rainflow

from src.Models.batteryModel import BatteryParams
from src.Utils.errors import DomainError

logger = logging.getLogger(__name__)


def cyclesWithEnd(soc_trajectory) -> list[tuple[float, float, int]]:
    """Ciclos (profundidade, peso, índice final) com profundidade > 0."""
    soc = np.asarray(soc_trajectory, dtype=float)
    if soc.size < 1:
        raise DomainError("Trajetória de SOC vazia")
    if soc.size == 1:
        return []
    if soc.size == 2:
        # rainflow.extract_cycles ignora séries de dois pontos
        profundidade = abs(soc[1] - soc[0])
        return [(profundidade, 0.5, 1)] if profundidade > 0 else []
    ciclos = []
    for faixa, _media, contagem, _inicio, fim in rainflow.extract_cycles(soc):
        if faixa > 0:
            ciclos.append((float(faixa), float(contagem), int(fim)))
    return ciclos


def rainflowCycles(soc_trajectory) -> list[tuple[float, float]]:
    return [(profundidade, peso) for profundidade, peso, _ in cyclesWithEnd(soc_trajectory)]


def cyclesToFailure(depth: float, params: BatteryParams) -> float:
    if depth <= 0:
        return np.inf
    return params.cycles_at_full_depth * depth ** (-params.woehler_exponent)


def cycleCost(depth: float, weight: float, params: BatteryParams) -> float:
    if depth < 0 or depth > 1 + 1e-9:
        raise DomainError(f"Profundidade de ciclo fora de [0, 1]: {depth}")
    if depth == 0:
        return 0.0
    return weight * params.replacement_cost / cyclesToFailure(depth, params)


def agingCost(cycles, params: BatteryParams) -> float:
    return float(sum(cycleCost(profundidade, peso, params) for profundidade, peso in cycles))


def attributeAgingCost(soc_trajectory, params: BatteryParams) -> np.ndarray:
    """Custo exato de cada PTU: cada ciclo é cobrado na PTU em que termina.

    `soc_trajectory` tem n+1 pontos (estado inicial e após cada PTU); o retorno tem n valores.
    """
    soc = np.asarray(soc_trajectory, dtype=float)
    custos = np.zeros(max(soc.size - 1, 0))
    if soc.size < 2:
        return custos
    for profundidade, peso, fim in cyclesWithEnd(soc):
        custos[max(fim - 1, 0)] += cycleCost(profundidade, peso, params)
    return custos
