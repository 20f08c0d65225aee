import numpy as np
import pandas as pd
import pytest

from src.Models.forecastModel import CopulaSpec, ForecastDistribution, ScenarioSet
from src.Services.Forecast.copulaService import fitCopula, nearestCorrelation
from src.Services.Forecast.forecastStoreService import ForecastStore
from src.Services.Forecast.scenarioService import (
    buildScenarioSet,
    expectedTrajectory,
    generateScenarios,
    quantile,
)
from src.Utils.errors import DomainError, ForecastError

T0 = pd.Timestamp("2024-06-01T00:00:00Z")


def _dist(valores, capacidade=10.0):
    return ForecastDistribution.fromSamples(valores, capacidade)


def _pinball(valores, x, tau):
    erro = np.asarray(valores) - x
    return float(np.mean(np.maximum(tau * erro, (tau - 1) * erro)))


def test_quantis_interpolados():
    dist = _dist([4, 1, 3, 2])
    assert quantile(dist, 0.5) == pytest.approx(2.5)
    assert quantile(dist, 0.375) == pytest.approx(2.0)
    assert quantile(dist, 0.05) == pytest.approx(1.0)
    assert quantile(dist, 0.95) == pytest.approx(4.0)


@pytest.mark.parametrize("tau", [0.0, 1.0, -0.1, 1.5])
def test_tau_fora_do_dominio(tau):
    with pytest.raises(DomainError):
        _dist([1, 2]).quantile(tau)


def test_quantil_e_monotono():
    rng = np.random.default_rng(2)
    dist = _dist(rng.uniform(0, 5, 37))
    taus = np.linspace(0.01, 0.99, 200)
    q = [dist.quantile(t) for t in taus]
    assert np.all(np.diff(q) >= 0)


def test_mediana_minimiza_perda_pinball():
    rng = np.random.default_rng(4)
    for _ in range(200):
        valores = rng.uniform(0, 5, int(rng.integers(1, 60)))
        dist = _dist(valores)
        grade = np.linspace(-1, 6, 2001)
        minimo = min(_pinball(valores, x, 0.5) for x in grade)
        assert _pinball(valores, dist.median(), 0.5) <= minimo + 1e-12


def test_distribuicao_invalida():
    with pytest.raises(DomainError):
        ForecastDistribution(0, np.array([2.0, 1.0]), 10.0)
    with pytest.raises(DomainError):
        ForecastDistribution(0, np.array([1.0, 6.0]), 10.0)
    with pytest.raises(DomainError):
        ForecastDistribution(0, np.array([]), 10.0)


def test_distribuicao_degenerada():
    dist = _dist([1.5])
    assert dist.isDegenerate
    assert dist.quantile(0.1) == dist.quantile(0.9) == 1.5
    assert dist.pit(3.0) == 0.5


def test_cenarios_degenerados():
    marginais = [_dist([1.0]), _dist([2.0]), _dist([0.0])]
    cenarios = generateScenarios(marginais, CopulaSpec.exponential(3, 0.8), 40, 1)
    assert np.all(cenarios.values == np.array([1.0, 2.0, 0.0]))


def test_copula_comonotona_preserva_postos():
    marginal = _dist(np.linspace(0, 4, 21))
    correlacao = np.ones((3, 3))
    cenarios = generateScenarios([marginal] * 3, CopulaSpec(correlacao), 200, 9)
    assert np.allclose(cenarios.values[:, 0], cenarios.values[:, 1])
    assert np.allclose(cenarios.values[:, 1], cenarios.values[:, 2])


def test_cenarios_convergem_para_a_marginal():
    rng = np.random.default_rng(8)
    marginal = _dist(rng.uniform(0, 4, 30))
    cenarios = generateScenarios([marginal], CopulaSpec.identity(1), 40_000, 3)
    for tau in (0.2, 0.5, 0.8):
        assert np.quantile(cenarios.values[:, 0], tau) == pytest.approx(marginal.quantile(tau), abs=0.05)


def test_mesma_semente_mesmos_cenarios():
    marginais = [_dist(np.linspace(0, 3, 10))] * 4
    copula = CopulaSpec.exponential(4, 0.7)
    a = generateScenarios(marginais, copula, 25, [1, 2, 3])
    b = generateScenarios(marginais, copula, 25, [1, 2, 3])
    c = generateScenarios(marginais, copula, 25, [1, 2, 4])
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_dimensao_incompativel():
    with pytest.raises(DomainError):
        generateScenarios([_dist([1.0])], CopulaSpec.identity(2), 5, 0)
    with pytest.raises(DomainError):
        generateScenarios([_dist([1.0])], CopulaSpec.identity(1), 0, 0)


def test_cenario_unico_usa_a_media():
    marginais = [_dist([0.0, 1.0, 2.0]), _dist([3.0])]
    cenarios = buildScenarioSet(marginais, CopulaSpec.identity(5), 1, 0)
    assert cenarios.isDeterministic
    assert cenarios.values.tolist() == [[1.0, 3.0]]


def test_build_recorta_a_copula_no_fim_do_periodo():
    marginais = [_dist([0.0, 1.0])] * 2
    cenarios = buildScenarioSet(marginais, CopulaSpec.exponential(6, 0.9), 10, 0)
    assert cenarios.values.shape == (10, 2)


def test_trajetoria_esperada_ponderada():
    cenarios = ScenarioSet([[0.0, 1.0], [2.0, 3.0]], [0.25, 0.75])
    assert expectedTrajectory(cenarios).tolist() == pytest.approx([1.5, 2.5])


def test_pesos_invalidos():
    with pytest.raises(DomainError):
        ScenarioSet([[0.0], [1.0]], [0.7, 0.7])


def test_copula_exponencial():
    copula = CopulaSpec.exponential(3, 0.5)
    assert copula.correlation.tolist() == [[1.0, 0.5, 0.25], [0.5, 1.0, 0.5], [0.25, 0.5, 1.0]]


def test_copula_rejeita_matriz_invalida():
    with pytest.raises(DomainError):
        CopulaSpec(np.array([[1.0, 0.9], [0.1, 1.0]]))
    with pytest.raises(DomainError):
        CopulaSpec(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_ajuste_de_copula():
    rng = np.random.default_rng(1)
    x = rng.normal(size=300)
    historico = np.column_stack([x, 2 * x + 1, -x, np.zeros(300)])
    copula = fitCopula(historico)
    c = copula.correlation
    assert c[0, 1] == pytest.approx(1.0, abs=1e-9)
    assert c[0, 2] == pytest.approx(-1.0, abs=1e-9)
    assert c[0, 3] == pytest.approx(0.0)
    assert np.allclose(np.diag(c), 1.0)


def test_ajuste_exige_historico():
    with pytest.raises(DomainError):
        fitCopula(np.zeros((1, 3)))


def test_correlacao_mais_proxima_e_psd():
    matriz = np.array([[1.0, 0.9, -0.9], [0.9, 1.0, 0.9], [-0.9, 0.9, 1.0]])
    corrigida = nearestCorrelation(matriz)
    assert np.linalg.eigvalsh(corrigida).min() > -1e-10
    assert np.allclose(np.diag(corrigida), 1.0)


def test_store_retorna_emissao_mais_recente():
    store = ForecastStore(10.0)
    alvo = T0 + pd.Timedelta(hours=12)
    store.add(T0, alvo, _dist([1.0]))
    store.add(T0 + pd.Timedelta(hours=6), alvo, _dist([2.0]))
    assert store.latest(alvo, T0 + pd.Timedelta(hours=5)).median() == 1.0
    assert store.latest(alvo, T0 + pd.Timedelta(hours=6)).median() == 2.0
    assert store.latestIssue(alvo, T0 + pd.Timedelta(hours=7)) == T0 + pd.Timedelta(hours=6)
    assert len(store) == 2


def test_store_rejeita_emissao_apos_alvo():
    with pytest.raises(ForecastError):
        ForecastStore(10.0).add(T0 + pd.Timedelta(hours=1), T0, _dist([1.0]))


def test_store_sem_previsao_disponivel():
    store = ForecastStore(10.0)
    alvo = T0 + pd.Timedelta(hours=3)
    store.add(T0 + pd.Timedelta(hours=1), alvo, _dist([1.0]))
    with pytest.raises(ForecastError):
        store.latest(alvo, T0)
    with pytest.raises(ForecastError):
        store.latest(T0 + pd.Timedelta(hours=4), T0 + pd.Timedelta(hours=2))


def test_store_rejeita_previsao_velha():
    store = ForecastStore(10.0)
    alvo = T0 + pd.Timedelta(days=3)
    store.add(T0, alvo, _dist([1.0]))
    with pytest.raises(ForecastError):
        store.latest(alvo, T0 + pd.Timedelta(hours=49))


def test_store_estrito_ignora_emissao_no_instante():
    store = ForecastStore(10.0)
    alvo = T0 + pd.Timedelta(hours=2)
    store.add(T0, alvo, _dist([1.0]))
    store.add(alvo, alvo, _dist([2.0]))
    assert store.latest(alvo, alvo).median() == 2.0
    assert store.latest(alvo, alvo, strict=True).median() == 1.0
    with pytest.raises(ForecastError):
        store.latest(alvo, T0, strict=True)
