"""Planta virtual a partir de várias plantas: séries somadas e previsões agregadas."""
import logging

import numpy as np
from scipy import stats

from src.Models.forecastModel import PTU_HORAS, CopulaSpec, ForecastDistribution, ptuOfDay
from src.Models.simulationModel import AggregationSpec, PlantSpec
from src.Services.Forecast.forecastStoreService import ForecastStore
from src.Utils.errors import DataError

logger = logging.getLogger(__name__)


def _validarAlinhamento(plants: list[PlantSpec]):
    referencia = plants[0].pv_series.index
    for planta in plants[1:]:
        if not planta.pv_series.index.equals(referencia):
            faltantes = referencia.symmetric_difference(planta.pv_series.index)
            exemplo = list(faltantes[:5])
            raise DataError(f"Séries de '{plants[0].name}' e '{planta.name}' desalinhadas; diferenças: {exemplo}")


def _somarPrevisoes(plants: list[PlantSpec], copula: CopulaSpec, n_membros: int, seed: int) -> ForecastStore:
    capacidade = sum(p.capacity for p in plants)
    store = ForecastStore(capacidade)
    raiz = copula.squareRoot()
    base = plants[0].forecast_store
    outros = [p.forecast_store for p in plants[1:]]
    rng = np.random.default_rng([seed, len(plants)])

    for emissao, alvo, dist in base.entries():
        # só pares (emissão, alvo) presentes em todas as plantas
        if any(s.latestIssue(alvo, emissao) != emissao for s in outros):
            continue
        marginais = [dist] + [s.latest(alvo, emissao) for s in outros]
        uniformes = stats.norm.cdf(rng.standard_normal((n_membros, len(plants))) @ raiz)
        soma = np.zeros(n_membros)
        for j, marginal in enumerate(marginais):
            soma += marginal.quantiles(uniformes[:, j])
        store.add(emissao, alvo, ForecastDistribution.fromSamples(soma, capacidade, ptuOfDay(alvo)))
    return store


def aggregate(plants: list[PlantSpec], cross_plant_copula: CopulaSpec | None = None,
              aggregate_store: ForecastStore | None = None, n_members: int = 100, seed: int = 0) -> PlantSpec:
    if not plants:
        raise DataError("Nenhuma planta para agregar")
    if len(plants) == 1:
        return plants[0]

    _validarAlinhamento(plants)
    capacidade = sum(p.capacity for p in plants)
    serie = sum((p.pv_series for p in plants[1:]), plants[0].pv_series.copy())
    serie = serie.clip(lower=0.0, upper=capacidade * PTU_HORAS)

    if aggregate_store is None:
        copula = cross_plant_copula or CopulaSpec.identity(len(plants))
        if copula.dimension != len(plants):
            raise DataError(f"Cópula entre plantas com dimensão {copula.dimension} para {len(plants)} plantas")
        aggregate_store = _somarPrevisoes(plants, copula, n_members, seed)
        logger.info(f"Previsões agregadas de {len(plants)} plantas: {len(aggregate_store)} distribuições")
    else:
        logger.info(f"Usando previsões agregadas fornecidas ({len(aggregate_store)} distribuições)")

    nome = "+".join(p.name for p in plants)
    return PlantSpec(nome, capacidade, serie, aggregate_store)


def aggregateSpec(spec: AggregationSpec, seed: int = 0) -> PlantSpec:
    return aggregate(spec.plants, spec.cross_plant_copula, spec.aggregate_store, spec.n_members, seed)
