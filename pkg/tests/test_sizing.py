import numpy as np
import pandas as pd
import pytest

from src.Models.batteryModel import BatteryParams
from src.Models.controlModel import MpcConfig
from src.Models.simulationModel import AggregationSpec, SettlementTotals, SimulationResult
from src.Models.sizingModel import STRATEGIES, StudyInputs
from src.Services.Sizing.sizingService import (
    BASELINE_LABEL,
    cumulativeImbalanceCurve,
    imbalanceReduction,
    imbalanceReductionCurve,
    requiredCapacity,
    revenueDelta,
    sizeReduction,
    SizingService,
)
from src.Utils.errors import ConfigError, DomainError


def _totais(receita):
    return SettlementTotals(receita, receita, 0.0, 0.0, 0.0, 0.0, 0.0, 1)


def _resultado(desequilibrios, rotulo):
    tempos = pd.date_range("2024-06-02", periods=len(desequilibrios), freq="30min", tz="UTC")
    ptus = pd.DataFrame({"timestamp": tempos, "imbalance": desequilibrios})
    soc = pd.DataFrame({"timestamp": tempos, "soc": 0.0, "content": 0.0})
    return SimulationResult(ptus, soc, {"label": rotulo})


def test_reducao_de_tamanho_das_tabelas():
    assert sizeReduction(45.0, 14.0) == pytest.approx(-68.9, abs=0.05)
    assert sizeReduction(28.0, 9.35) == pytest.approx(-66.7, abs=0.1)
    assert sizeReduction(10.0, 10.0) == 0.0


def test_reducao_exige_referencia_positiva():
    with pytest.raises(DomainError):
        sizeReduction(0.0, 1.0)


def test_delta_de_receita():
    assert revenueDelta(_totais(76893.5), _totais(77490.0)) == pytest.approx(-0.77, abs=0.005)
    with pytest.raises(DomainError):
        revenueDelta(_totais(1.0), _totais(0.0))


def test_capacidade_exigida_e_a_amplitude():
    assert requiredCapacity([0.0, -0.4, 0.3, 1.1, 0.2]) == pytest.approx(1.5)
    assert requiredCapacity([0.7]) == 0.0
    with pytest.raises(DomainError):
        requiredCapacity([])


def test_reducao_de_desequilibrio():
    base = _resultado([1.0, -1.0, 0.5, -0.5], "base")
    melhor = _resultado([0.25, -0.25, 0.0, 0.25], "melhor")
    assert imbalanceReduction(melhor, base) == pytest.approx(75.0)
    curva = imbalanceReductionCurve([melhor, base], base)
    assert curva["reduction_pct"].tolist() == pytest.approx([75.0, 0.0])


def test_reducao_com_periodos_diferentes():
    with pytest.raises(DomainError):
        imbalanceReduction(_resultado([1.0, 1.0], "a"), _resultado([1.0, 1.0, 1.0], "b"))
    with pytest.raises(DomainError):
        imbalanceReduction(_resultado([1.0], "a"), _resultado([0.0], "b"))


def test_curva_acumulada_normalizada():
    base = _resultado([1.0, -1.0, 2.0], "base")
    estrategia = _resultado([0.0, 1.0, 0.0], "estrategia")
    curva = cumulativeImbalanceCurve([estrategia], base)
    ultimo = curva.groupby("strategy")["cumulative_normalized_imbalance"].last()
    assert ultimo["base"] == pytest.approx(1.0)
    assert ultimo["estrategia"] == pytest.approx(0.25)


@pytest.fixture(scope="module")
def estudo(dados_dois_dias):
    spec = dados_dois_dias.spec
    entrada = StudyInputs(AggregationSpec(dados_dois_dias.plants), dados_dois_dias.prices,
                          spec.periodStart, spec.end, seed=1)
    return SizingService(entrada, BatteryParams(capacity=2.7), MpcConfig(horizon_steps=4, n_scenarios=5), workers=2)


def test_estudo_de_dimensionamento(estudo):
    relatorios, resultados = estudo.sizingStudy()
    assert [r.strategy for r in relatorios] == [s.label for s in STRATEGIES]
    assert set(resultados) == {s.label for s in STRATEGIES} | {BASELINE_LABEL}
    assert relatorios[0].reduction_vs_benchmark == 0.0
    for r in relatorios:
        assert r.required_capacity_mwh == pytest.approx(requiredCapacity(resultados[r.strategy].contentTrace))
        assert r.required_capacity_mwh_per_mwp == pytest.approx(r.required_capacity_mwh / 2.7)
        assert r.imbalance_reduction <= 100.0
    assert resultados[BASELINE_LABEL].ptus["delivered_bess"].eq(0.0).all()
    assert all(resultados[s.label].metadata["unbounded"] for s in STRATEGIES)


def test_bateria_ilimitada_comeca_vazia(estudo):
    bateria = estudo.unboundedBattery()
    assert bateria.unbounded
    assert bateria.initial_soc == 0.0
    assert bateria.capacity == pytest.approx(2.7)


def test_bateria_ilimitada_nao_envelhece(estudo):
    cara = SizingService(estudo.inputs, BatteryParams(capacity=2.7, replacement_cost=400_000.0), estudo.mpc, workers=1)
    bateria = cara.unboundedBattery()
    assert bateria.replacement_cost == 0.0
    assert bateria.capacity == pytest.approx(2.7)


def test_curva_por_capacidade(estudo):
    curva = estudo.capacitySweep([0.1, 0.5])
    assert len(curva) == 2 * len(STRATEGIES)
    for _, grupo in curva.groupby("strategy"):
        assert grupo["capacity_mwh_per_mwp"].tolist() == [0.1, 0.5]
    assert np.all(curva["reduction_pct"] <= 100.0)


def test_estudo_de_receita(estudo):
    relatorios, resultados = estudo.revenueStudy(0.5)
    assert relatorios[0].strategy == BASELINE_LABEL
    assert relatorios[0].revenue_delta == 0.0
    assert len(relatorios) == 1 + len(STRATEGIES)
    for r in relatorios[1:]:
        assert resultados[r.strategy].metadata["battery_capacity_mwh"] == pytest.approx(1.35)
        assert r.penalized_revenue == pytest.approx(r.revenue - r.aging_cost)


@pytest.mark.parametrize("valor", ["abc", "2.5", "0"])
def test_workers_do_ambiente_validado(estudo, monkeypatch, valor):
    monkeypatch.setenv("PVBESS_WORKERS", valor)
    with pytest.raises(ConfigError):
        SizingService(estudo.inputs, estudo.battery, estudo.mpc)
