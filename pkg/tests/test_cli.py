import shutil
import textwrap
from pathlib import Path

import pandas as pd
import pytest
import yaml

import app
from src.Services.Exportar.resultExportService import loadResult, saveResult
from src.Utils.digest import digestArquivo
from src.Utils.errors import DataError

ESPECIFICACAO = """\
seed: 5
start: 2024-06-01
days: 3
output_dir: dados
plants:
  n_plants: 1
  capacity_mwp: 2.7
forecast:
  members: 10
  horizon_steps: 6
prices:
  inverted_probability: 0.1
run_config:
  mpc:
    horizon_steps: 4
    n_scenarios: 5
  sizing:
    curve_capacities: []
"""


@pytest.fixture(scope="module")
def dados(tmp_path_factory):
    pasta = tmp_path_factory.mktemp("cli")
    spec = pasta / "dados.yaml"
    spec.write_text(textwrap.dedent(ESPECIFICACAO), encoding="utf-8")
    assert app.main(["generate-data", "--config", str(spec)]) == 0
    return pasta / "dados"


@pytest.fixture(scope="module")
def simulado(dados):
    saida = dados.parent / "sim_a"
    assert app.main(["simulate", "--config", str(dados / "config.yaml"), "--output", str(saida)]) == 0
    return saida


def test_gerar_dados_grava_arquivos(dados):
    for nome in ("prices.csv", "plant1_pv.csv", "plant1_forecast.csv", "config.yaml"):
        assert (dados / nome).exists()


def test_simular_grava_manifesto(simulado):
    assert (simulado / "manifest.yaml").exists()
    manifesto = yaml.safe_load((simulado / "manifest.yaml").read_text(encoding="utf-8"))
    assert manifesto["metadata"]["label"] == "ImbalanceMin-ID-stochastic"
    assert manifesto["summary"]["n_ptus"] == 96


def test_simulacao_deterministica(dados, simulado):
    outra = dados.parent / "sim_b"
    assert app.main(["simulate", "--config", str(dados / "config.yaml"), "--output", str(outra)]) == 0
    assert digestArquivo(outra / "ptus.csv") == digestArquivo(simulado / "ptus.csv")
    assert digestArquivo(outra / "soc_trace.csv") == digestArquivo(simulado / "soc_trace.csv")


def test_arquivo_de_precos_ausente(dados, capsys):
    documento = yaml.safe_load((dados / "config.yaml").read_text(encoding="utf-8"))
    documento["prices_file"] = "nao_existe.csv"
    config = dados / "sem_precos.yaml"
    config.write_text(yaml.safe_dump(documento), encoding="utf-8")

    assert app.main(["simulate", "--config", str(config), "--output", str(dados.parent / "x")]) == 2
    assert "nao_existe.csv" in capsys.readouterr().err


def test_estrategia_invalida(dados, capsys):
    codigo = app.main(["simulate", "--config", str(dados / "config.yaml"), "--strategy", "Qualquer-coisa",
                       "--output", str(dados.parent / "y")])
    assert codigo == 2
    assert capsys.readouterr().err


def test_relatorio_e_estavel(simulado, tmp_path):
    assert app.main(["report", str(simulado), "--output", str(tmp_path / "r1")]) == 0
    assert app.main(["report", str(simulado), "--output", str(tmp_path / "r2")]) == 0
    csvs = sorted(p.name for p in (tmp_path / "r1").glob("*.csv"))
    assert csvs
    for nome in csvs:
        assert (tmp_path / "r1" / nome).read_bytes() == (tmp_path / "r2" / nome).read_bytes()
    assert (tmp_path / "r1" / "report.xlsx").exists()


def test_relatorio_sem_resultados(tmp_path):
    assert app.main(["report", str(tmp_path)]) == 3


def test_dimensionamento(dados, tmp_path):
    saida = tmp_path / "size"
    assert app.main(["size", "--config", str(dados / "config.yaml"), "--output", str(saida)]) == 0
    assert (saida / "study.yaml").exists()
    tabela = pd.read_csv(saida / "report" / "table_i.csv")
    assert len(tabela) == 4
    assert tabela["Size reduction (%)"].iloc[0] == 0.0


def test_resultado_ida_e_volta(simulado, tmp_path):
    original = loadResult(simulado)
    saveResult(original, tmp_path / "copia")
    relido = loadResult(tmp_path / "copia")
    pd.testing.assert_frame_equal(relido.ptus, original.ptus, check_dtype=False)
    pd.testing.assert_frame_equal(relido.soc_trace, original.soc_trace, check_dtype=False)
    assert relido.metadata == original.metadata


def test_tabela_adulterada(simulado, tmp_path):
    copia = tmp_path / "copia"
    saveResult(loadResult(simulado), copia)
    with (copia / "ptus.csv").open("a", encoding="utf-8") as f:
        f.write("lixo\n")
    with pytest.raises(DataError):
        loadResult(copia)


def test_configuracao_de_exemplo_roda_apos_gerar_dados(tmp_path):
    origem = Path(app.__file__).parent / "config"
    pasta = tmp_path / "config"
    pasta.mkdir()
    for nome in ("dados.yaml", "example.yaml"):
        shutil.copy(origem / nome, pasta / nome)
    assert app.main(["generate-data", "--config", str(pasta / "dados.yaml")]) == 0
    assert (tmp_path / "data" / "prices.csv").exists()
    saida = tmp_path / "saida"
    assert app.main(["simulate", "--config", str(pasta / "example.yaml"), "--output", str(saida)]) == 0
    assert (saida / "manifest.yaml").exists()


def test_workers_invalido_e_erro_de_configuracao(dados, tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PVBESS_WORKERS", "abc")
    assert app.main(["size", "--config", str(dados / "config.yaml"), "--output", str(tmp_path / "w")]) == 2
    assert "PVBESS_WORKERS" in capsys.readouterr().err
