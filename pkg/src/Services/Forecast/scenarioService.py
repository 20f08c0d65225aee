"""Quantis, cenários de PV com cópula gaussiana e trajetória esperada."""
import logging

import numpy as np
from scipy import stats

from src.Models.forecastModel import CopulaSpec, ForecastDistribution, ScenarioSet
from src.Utils.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_SCENARIOS = 100


def quantile(dist: ForecastDistribution, tau: float) -> float:
    return dist.quantile(tau)


def generateScenarios(marginals: list[ForecastDistribution], copula: CopulaSpec, n: int, seed) -> ScenarioSet:
    if n < 1:
        raise DomainError(f"n deve ser >= 1: {n}")
    if copula.dimension != len(marginals):
        raise DomainError(f"Dimensão da cópula ({copula.dimension}) difere do número de marginais ({len(marginals)})")

    rng = np.random.default_rng(seed)
    latentes = rng.standard_normal((n, copula.dimension)) @ copula.squareRoot()
    uniformes = stats.norm.cdf(latentes)

    valores = np.empty_like(uniformes)
    for j, marginal in enumerate(marginals):
        valores[:, j] = marginal.quantiles(uniformes[:, j])

    capacidade = max(m.plant_capacity for m in marginals)
    return ScenarioSet(valores, plant_capacity=capacidade)


def expectedTrajectory(s: ScenarioSet) -> np.ndarray:
    return s.weights @ s.values


def expectedScenario(marginals: list[ForecastDistribution]) -> ScenarioSet:
    """Cenário único com o valor esperado de cada marginal (modo determinístico)."""
    medias = np.array([[m.mean() for m in marginals]])
    return ScenarioSet(medias, plant_capacity=max(m.plant_capacity for m in marginals))


def buildScenarioSet(marginals: list[ForecastDistribution], copula: CopulaSpec, n: int, seed) -> ScenarioSet:
    if n == 1:
        return expectedScenario(marginals)
    if copula.dimension != len(marginals):
        copula = CopulaSpec(copula.correlation[: len(marginals), : len(marginals)])
    return generateScenarios(marginals, copula, n, seed)
