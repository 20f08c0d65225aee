import numpy as np
import pandas as pd
import pytest
import yaml

from src.Config.runConfig import loadRunConfig
from src.Services.Ingestion.studyService import StudyLoader
from src.Services.Synthetic.syntheticService import (
    clearSkyProfile,
    generate,
    generatePrices,
    loadGenerationSpec,
    writeGenerated,
)
from src.Utils.errors import ConfigError
from tests.conftest import specSintetico


def test_dois_dias_geram_96_ptus():
    dados = generate(specSintetico(days=2))
    assert len(dados.plants[0].pv_series) == 96
    assert len(dados.prices) == 96
    assert dados.spec.periodStart == pd.Timestamp("2024-06-02", tz="UTC")


def test_sem_atenuacao_pv_e_o_ceu_claro():
    dados = generate(specSintetico(attenuation=False))
    planta = dados.plants[0]
    assert np.allclose(planta.pv_series.to_numpy(), dados.clear_sky * 2.7 * 0.5)


def test_ceu_claro_zera_a_noite():
    tempos = pd.date_range("2024-06-01", periods=48, freq="30min", tz="UTC")
    perfil = clearSkyProfile(tempos, 0.3)
    assert perfil[0] == 0.0
    assert perfil[24] == pytest.approx(perfil.max())
    assert np.all((perfil >= 0) & (perfil <= 1))


def test_fracao_de_precos_invertidos():
    spec = specSintetico(inverted_probability=0.3)
    tempos = pd.date_range("2024-01-01", periods=365 * 48, freq="30min", tz="UTC")
    precos = generatePrices(spec, np.random.default_rng(0), tempos)
    fracao = (precos["neg_imbalance_price"] < precos["pos_imbalance_price"]).mean()
    assert fracao == pytest.approx(0.3, abs=0.02)


def test_precos_normais_cercam_o_spot():
    precos = generate(specSintetico()).prices
    assert (precos["pos_imbalance_price"] < precos["spot"]).all()
    assert (precos["spot"] < precos["neg_imbalance_price"]).all()


def test_nenhuma_emissao_cobre_a_propria_ptu():
    dados = generate(specSintetico())
    store = dados.plants[0].forecast_store
    for emissao, alvo, dist in store.entries():
        assert emissao < alvo
        assert dist.ptu_index == alvo.hour * 2 + alvo.minute // 30
    alvo = pd.Timestamp("2024-06-02T12:00:00Z")
    assert store.latestIssue(alvo, alvo) == alvo - pd.Timedelta(minutes=30)


def test_previsao_de_tempo_real_nao_e_a_realizacao():
    dados = generate(specSintetico(forecast_noise=0.3))
    planta = dados.plants[0]
    diurnas = [t for t in planta.pv_series.index if planta.pv_series[t] > 0.05]
    assert diurnas
    erros = []
    for alvo in diurnas:
        dist = planta.forecast_store.latest(alvo, alvo, strict=True)
        assert not dist.isDegenerate
        erros.append(abs(dist.median() - planta.pv_series[alvo]))
    assert max(erros) > 1e-3


def test_ruido_nulo_gera_previsoes_perfeitas(dados_perfeitos):
    planta = dados_perfeitos.plants[0]
    for emissao, alvo, dist in planta.forecast_store.entries():
        assert dist.isDegenerate
        assert dist.sorted_values[0] == planta.pv_series[alvo]


def test_emissao_day_ahead_cobre_o_dia_seguinte():
    dados = generate(specSintetico())
    store = dados.plants[0].forecast_store
    meio_dia = pd.Timestamp("2024-06-01T12:00:00Z")
    for alvo in pd.date_range("2024-06-02", periods=48, freq="30min", tz="UTC"):
        assert store.latestIssue(alvo, meio_dia) == meio_dia


def test_mesma_semente_mesmos_dados():
    a, b = generate(specSintetico(seed=5)), generate(specSintetico(seed=5))
    pd.testing.assert_frame_equal(a.prices, b.prices)
    pd.testing.assert_series_equal(a.plants[0].pv_series, b.plants[0].pv_series)
    assert not generate(specSintetico(seed=6)).prices.equals(a.prices)


def test_plantas_perfeitamente_correlacionadas():
    dados = generate(specSintetico(capacities=(2.7, 2.7), plant_correlation=1.0))
    assert np.allclose(dados.plants[0].pv_series, dados.plants[1].pv_series)


def test_gravar_e_reler(tmp_path):
    dados = generate(specSintetico(run_config={"mpc": {"horizon_steps": 4, "n_scenarios": 5}}))
    arquivos = writeGenerated(dados, tmp_path)
    documento = yaml.safe_load(arquivos["config"].read_text(encoding="utf-8"))
    assert documento["period"] == {"start": "2024-06-02", "end": "2024-06-04"}
    assert documento["mpc"]["n_scenarios"] == 5
    assert documento["mpc"]["objective"] == "ImbalanceMin"

    cfg = loadRunConfig(arquivos["config"])
    entrada = StudyLoader().load(cfg)
    planta = entrada.agg.plants[0]
    assert np.allclose(planta.pv_series.to_numpy(), dados.plants[0].pv_series.to_numpy())
    assert len(planta.forecast_store) == len(dados.plants[0].forecast_store)
    assert np.allclose(entrada.prices.to_numpy(), dados.prices.to_numpy())


def test_especificacao_em_yaml(tmp_path):
    caminho = tmp_path / "dados.yaml"
    caminho.write_text(
        "seed: 4\nstart: 2024-03-01\ndays: 4\nplants:\n  n_plants: 2\n  capacity_mwp: 1.5\n"
        "forecast:\n  members: 12\nprices:\n  inverted_probability: 0.1\n",
        encoding="utf-8",
    )
    spec = loadGenerationSpec(caminho)
    assert spec.capacities == (1.5, 1.5)
    assert spec.members == 12
    assert spec.end == pd.Timestamp("2024-03-05", tz="UTC")
    assert spec.inverted_probability == 0.1


@pytest.mark.parametrize("texto", ["days: 1\n", "prices:\n  inverted_probability: 2\n", "days: [1\n"])
def test_especificacao_invalida(tmp_path, texto):
    caminho = tmp_path / "dados.yaml"
    caminho.write_text(texto, encoding="utf-8")
    with pytest.raises(ConfigError):
        loadGenerationSpec(caminho)


def test_especificacao_ausente(tmp_path):
    with pytest.raises(ConfigError):
        loadGenerationSpec(tmp_path / "nada.yaml")
