import itertools

import numpy as np
import pytest

from src.Models.batteryModel import BatteryParams, BatteryState
from src.Models.controlModel import LpProblem, LpStatus, Mode, MpcConfig
from src.Models.forecastModel import ForecastDistribution, ScenarioSet
from src.Models.marketModel import PriceRecord
from src.Services.Control.biddingService import newsvendorFractile
from src.Services.Control.dayAheadRevenueService import expectedPenalizedRevenue, planDayAheadRevenue
from src.Services.Control.lpSolverService import solveLp

CONFIG = MpcConfig(horizon_steps=48, n_scenarios=200, objective="RevenueMax")


def test_maximiza_com_limite_superior():
    solucao = solveLp(LpProblem(c=np.array([-1.0]), bounds=[(0.0, None)], A_ub=np.array([[1.0]]), b_ub=np.array([3.0])))
    assert solucao.isOptimal
    assert solucao.x[0] == pytest.approx(3.0)
    assert solucao.objective == pytest.approx(-3.0)


def test_problema_inviavel():
    solucao = solveLp(LpProblem(c=np.array([1.0]), bounds=[(1.0, None)], A_ub=np.array([[1.0]]), b_ub=np.array([0.0])))
    assert solucao.status is LpStatus.INFEASIBLE
    assert solucao.x is None


def test_problema_ilimitado():
    solucao = solveLp(LpProblem(c=np.array([-1.0]), bounds=[(0.0, None)]))
    assert solucao.status is LpStatus.UNBOUNDED


def test_lp_gravado_para_depuracao(tmp_path):
    problema = LpProblem(c=np.array([1.0, -2.0]), bounds=[(0.0, 1.0), (None, 4.0)], A_eq=np.array([[1.0, 1.0]]),
                         b_eq=np.array([2.0]), names=["a", "b"], label="teste")
    assert solveLp(problema, str(tmp_path)).isOptimal
    [arquivo] = list(tmp_path.glob("*_teste.lp.txt"))
    texto = arquivo.read_text(encoding="utf-8")
    assert "minimize" in texto
    assert "+1 a +1 b = 2" in texto
    assert "-inf <= b <= 4" in texto


def test_otimo_coincide_com_enumeracao_de_vertices():
    rng = np.random.default_rng(17)
    for _ in range(30):
        c = rng.normal(size=2)
        A = rng.normal(size=(4, 2))
        b = rng.uniform(0.5, 3.0, 4)
        solucao = solveLp(LpProblem(c=c, bounds=[(0.0, 5.0), (0.0, 5.0)], A_ub=A, b_ub=b))
        assert solucao.isOptimal

        # caixa [0, 5]² como restrições adicionais
        linhas = np.vstack([A, -np.eye(2), np.eye(2)])
        rhs = np.concatenate([b, np.zeros(2), np.full(2, 5.0)])
        melhor = np.inf
        for i, j in itertools.combinations(range(len(linhas)), 2):
            sistema = linhas[[i, j]]
            if abs(np.linalg.det(sistema)) < 1e-12:
                continue
            vertice = np.linalg.solve(sistema, rhs[[i, j]])
            if np.all(linhas @ vertice <= rhs + 1e-9):
                melhor = min(melhor, float(c @ vertice))
        assert solucao.objective == pytest.approx(melhor, abs=1e-7)


def _precos(n, rng):
    precos = []
    for _ in range(n):
        pi_pos = float(rng.uniform(0, 40))
        pi_neg = pi_pos + float(rng.uniform(1, 40))
        precos.append(PriceRecord(pi_pos + float(rng.uniform(0.05, 0.95)) * (pi_neg - pi_pos), pi_pos, pi_neg))
    return precos


def test_lance_sem_bateria_e_o_quantil_do_fractil():
    rng = np.random.default_rng(3)
    valores = rng.uniform(0, 1.2, (50, 4))
    precos = _precos(4, rng)
    plano = planDayAheadRevenue(ScenarioSet(valores, plant_capacity=2.7), precos, None, None, CONFIG)
    for t in range(4):
        esperado = ForecastDistribution.fromSamples(valores[:, t], 2.7).quantile(newsvendorFractile(precos[t]))
        assert plano.pv_bids[t] == pytest.approx(esperado)
    assert plano.bess_bids == [0.0] * 4


def test_lance_sem_bateria_proximo_do_otimo_da_grade():
    rng = np.random.default_rng(5)
    valores = np.tile(np.round(np.linspace(0, 1, 101), 2)[:, None], (1, 4))
    cenarios = ScenarioSet(valores, plant_capacity=2.7)
    precos = _precos(4, rng)
    plano = planDayAheadRevenue(cenarios, precos, None, None, CONFIG)
    grade = np.linspace(0, 1, 201)
    otimo = 0.0
    for t in range(4):
        sozinho = ScenarioSet(valores[:, [t]], plant_capacity=2.7)
        otimo += max(expectedPenalizedRevenue(sozinho, [precos[t]], [b]) for b in grade)
    assert plano.expected_objective >= otimo - 2e-2


def test_cenario_deterministico_oferta_a_propria_trajetoria():
    trajetoria = [[0.0, 0.4, 1.1, 0.3]]
    plano = planDayAheadRevenue(ScenarioSet(trajetoria, plant_capacity=2.7), _precos(4, np.random.default_rng(1)),
                                None, None, CONFIG)
    assert plano.pv_bids == pytest.approx(trajetoria[0])


def test_precos_iguais_rendem_spot_vezes_energia_esperada():
    rng = np.random.default_rng(9)
    valores = rng.uniform(0, 1, (30, 3))
    precos = [PriceRecord(42.0, 42.0, 42.0)] * 3
    plano = planDayAheadRevenue(ScenarioSet(valores, plant_capacity=2.7), precos, None, None, CONFIG)
    assert plano.expected_objective == pytest.approx(42.0 * valores.mean(axis=0).sum())


def test_bateria_cara_e_vazia_nao_oferta():
    rng = np.random.default_rng(12)
    valores = rng.uniform(0, 1.2, (40, 6))
    cenarios = ScenarioSet(valores, plant_capacity=2.7)
    precos = _precos(6, rng)
    bateria = BatteryParams(capacity=1.0, replacement_cost=1e9, initial_soc=0.0)

    com_bateria = planDayAheadRevenue(cenarios, precos, BatteryState(0.0), bateria, CONFIG)
    sem_bateria = planDayAheadRevenue(cenarios, precos, None, None, CONFIG)
    assert np.allclose(com_bateria.bess_bids, 0.0, atol=1e-6)
    assert com_bateria.expected_objective >= sem_bateria.expected_objective - 1e-6


def test_bateria_carregada_vende_no_day_ahead():
    valores = np.full((5, 2), 0.5)
    precos = [PriceRecord(50.0, 40.0, 60.0), PriceRecord(10.0, 5.0, 20.0)]
    bateria = BatteryParams(capacity=1.0, initial_soc=1.0, charge_efficiency=1.0, discharge_efficiency=1.0)
    plano = planDayAheadRevenue(ScenarioSet(valores, plant_capacity=2.7), precos, BatteryState(1.0), bateria, CONFIG)
    assert plano.bess_bids[0] == pytest.approx(1.0, abs=1e-6)
    assert plano.pv_bids == pytest.approx([0.5, 0.5])


def test_modo_deterministico_usa_trajetoria_esperada():
    rng = np.random.default_rng(4)
    valores = rng.uniform(0, 1, (20, 3))
    precos = _precos(3, rng)
    config = MpcConfig(horizon_steps=48, n_scenarios=20, objective="RevenueMax", mode=Mode.DETERMINISTIC)
    plano = planDayAheadRevenue(ScenarioSet(valores, plant_capacity=2.7), precos, None, None, config)
    assert plano.pv_bids == pytest.approx(valores.mean(axis=0).tolist())


def test_lance_sem_bateria_com_fractil_pequeno():
    valores = np.tile(np.linspace(0.0, 1.0, 200)[:, None], (1, 2))
    precos = [PriceRecord(30.5, 30.0, 130.0)] * 2
    plano = planDayAheadRevenue(ScenarioSet(valores, plant_capacity=2.7), precos, None, None, CONFIG)
    esperado = ForecastDistribution.fromSamples(valores[:, 0], 2.7).quantile(0.005)
    assert plano.pv_bids == pytest.approx([esperado, esperado])
    assert plano.pv_bids[0] < ForecastDistribution.fromSamples(valores[:, 0], 2.7).quantile(0.01)
