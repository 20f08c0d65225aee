import pandas as pd
import pytest

from src.Models.marketModel import MarketPosition, PriceRecord
from src.Models.simulationModel import SimulationResult
from src.Services.Market.settlementService import (
    balancingPriceFor,
    imbalanceOf,
    penalizedPtuRevenue,
    ptuRevenue,
    settlePtu,
)
from src.Services.Simulation.settleService import settle
from src.Utils.errors import DomainError

PRECOS = PriceRecord(40.0, 30.0, 60.0)


def test_entrega_exata_recebe_spot():
    assert ptuRevenue(1.0, MarketPosition(0, 1.0), PRECOS) == pytest.approx(40.0)


def test_deficit_liquidado_ao_preco_negativo():
    assert ptuRevenue(0.8, MarketPosition(0, 1.0), PRECOS) == pytest.approx(28.0)


def test_compra_intraday_fecha_o_deficit():
    posicao = MarketPosition(0, 1.0, intraday_energy=0.2, intraday_price=40.0)
    assert imbalanceOf(0.8, posicao) == pytest.approx(0.0)
    assert ptuRevenue(0.8, posicao, PRECOS) == pytest.approx(32.0)


def test_receita_penalizada_com_deficit():
    assert penalizedPtuRevenue(0.8, 0.0, MarketPosition(0, 1.0), PRECOS, 0.0) == pytest.approx(28.0)


def test_receita_penalizada_bateria_cobre_deficit():
    assert penalizedPtuRevenue(0.8, 0.2, MarketPosition(0, 1.0), PRECOS, 0.5) == pytest.approx(39.5)


def test_preco_de_balanco_pelo_sinal():
    assert balancingPriceFor(0.1, PRECOS) == 30.0
    assert balancingPriceFor(-0.1, PRECOS) == 60.0
    assert balancingPriceFor(0.0, PRECOS) == 40.0


def test_precos_invertidos_e_negativos_sao_aceitos():
    invertido = PriceRecord(40.0, 50.0, 35.0)
    assert invertido.isInverted
    assert ptuRevenue(0.6, MarketPosition(0, 0.5), invertido) == pytest.approx(25.0)
    assert not PriceRecord(-10.0, -20.0, 5.0).isInverted


def test_preco_nao_finito_rejeitado():
    with pytest.raises(DomainError):
        PriceRecord(float("nan"), 1.0, 2.0)


def test_envelhecimento_negativo_rejeitado():
    with pytest.raises(DomainError):
        settlePtu(1.0, 0.0, MarketPosition(0, 1.0), PRECOS, -1.0)


def test_registro_de_liquidacao():
    registro = settlePtu(1.0, 0.5, MarketPosition(7, 1.5, 0.5, 0.3, 50.0), PriceRecord(50.0, 45.0, 55.0), 0.5)
    assert registro.ptu_index == 7
    assert registro.day_ahead_energy == pytest.approx(2.0)
    assert registro.imbalance == pytest.approx(-0.2)
    assert registro.revenue == pytest.approx(74.0)
    assert registro.penalized_revenue == pytest.approx(73.5)


def _resultadoQuatroPtus() -> SimulationResult:
    ptus = pd.DataFrame({
        "timestamp": pd.date_range("2024-06-02", periods=4, freq="30min", tz="UTC"),
        "ptu_index": [0, 1, 2, 3],
        "day_ahead_pv_part": [1.0, 1.5, 1.0, 0.5],
        "day_ahead_bess_part": [0.0, 0.5, 0.0, 0.0],
        "day_ahead_energy": [1.0, 2.0, 1.0, 0.5],
        "intraday_energy": [0.0, 0.3, -0.5, 0.0],
        "intraday_price": [0.0, 50.0, -10.0, 0.0],
        "delivered_pv": [0.8, 1.0, 1.2, 0.7],
        "delivered_bess": [0.0, 0.5, 0.0, -0.1],
        "spot": [40.0, 50.0, -10.0, 40.0],
        "pos_imbalance_price": [30.0, 45.0, -20.0, 50.0],
        "neg_imbalance_price": [60.0, 55.0, 5.0, 35.0],
        "aging_cost": [0.0, 0.5, 0.0, 0.25],
    })
    soc = pd.DataFrame({"timestamp": pd.date_range("2024-06-02", periods=5, freq="30min", tz="UTC"),
                        "soc": [0.5] * 5, "content": [0.5] * 5})
    return SimulationResult(ptus, soc, {"label": "fixture"})


def test_totais_de_quatro_ptus():
    totais = settle(_resultadoQuatroPtus())
    assert totais.revenue == pytest.approx(110.5)
    assert totais.aging_cost == pytest.approx(0.75)
    assert totais.penalized_revenue == pytest.approx(109.75)
    assert totais.absolute_imbalance == pytest.approx(0.8)
    assert totais.imbalance_penalty == pytest.approx(8.5)
    assert totais.day_ahead_energy == pytest.approx(4.5)
    assert totais.n_ptus == 4


def test_settle_e_idempotente():
    resultado = _resultadoQuatroPtus()
    assert settle(resultado) == settle(resultado)


def test_settle_com_precos_explicitos():
    precos = [PriceRecord(40.0, 40.0, 40.0)] * 4
    totais = settle(_resultadoQuatroPtus(), precos)
    assert totais.imbalance_penalty == pytest.approx(0.0)
