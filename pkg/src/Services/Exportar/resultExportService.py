"""Gravação e leitura de um SimulationResult como diretório de tabelas CSV + manifesto YAML."""
import logging
from dataclasses import asdict
from pathlib import Path

import pandas as pd
import yaml

from src.Models.simulationModel import SimulationResult
from src.Services.Simulation.settleService import settle
from src.Utils.digest import digestArquivo
from src.Utils.errors import DataError

logger = logging.getLogger(__name__)

ARQUIVO_PTUS = "ptus.csv"
ARQUIVO_SOC = "soc_trace.csv"
ARQUIVO_MANIFESTO = "manifest.yaml"
FORMATO_TS = "%Y-%m-%dT%H:%M:%SZ"
COLUNAS_TEMPO = {
    ARQUIVO_PTUS: ["timestamp", "da_decided_at", "id_decided_at", "rt_decided_at"],
    ARQUIVO_SOC: ["timestamp"],
}


def _paraTexto(df: pd.DataFrame, colunas: list[str]) -> pd.DataFrame:
    df = df.copy()
    for coluna in colunas:
        if coluna in df.columns:
            df[coluna] = pd.DatetimeIndex(df[coluna]).strftime(FORMATO_TS)
    return df


def _lerTabela(caminho: Path, colunas: list[str]) -> pd.DataFrame:
    if not caminho.exists():
        raise DataError(f"Tabela de resultado ausente: {caminho}", str(caminho))
    df = pd.read_csv(caminho, float_precision="round_trip")
    for coluna in colunas:
        if coluna in df.columns:
            df[coluna] = pd.to_datetime(df[coluna], utc=True, format="ISO8601")
    return df


class ResultRepository:
    def save(self, result: SimulationResult, pasta: str | Path) -> dict[str, Path]:
        pasta = Path(pasta)
        pasta.mkdir(parents=True, exist_ok=True)
        arquivos = {}
        for nome, tabela in ((ARQUIVO_PTUS, result.ptus), (ARQUIVO_SOC, result.soc_trace)):
            caminho = pasta / nome
            _paraTexto(tabela, COLUNAS_TEMPO[nome]).to_csv(caminho, index=False, lineterminator="\n")
            arquivos[nome] = caminho

        totais = settle(result)
        manifesto = {
            "metadata": dict(result.metadata),
            "summary": asdict(totais),
            "digests": {nome: digestArquivo(caminho) for nome, caminho in arquivos.items()},
        }
        arquivos[ARQUIVO_MANIFESTO] = pasta / ARQUIVO_MANIFESTO
        arquivos[ARQUIVO_MANIFESTO].write_text(yaml.safe_dump(manifesto, sort_keys=True), encoding="utf-8")
        logger.info(f"Resultado '{result.label}' gravado em {pasta}")
        return arquivos

    def load(self, pasta: str | Path) -> SimulationResult:
        pasta = Path(pasta)
        caminho_manifesto = pasta / ARQUIVO_MANIFESTO
        if not caminho_manifesto.exists():
            raise DataError(f"Manifesto não encontrado: {caminho_manifesto}", str(caminho_manifesto))
        try:
            manifesto = yaml.safe_load(caminho_manifesto.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as e:
            raise DataError(f"Manifesto ilegível: {e}", str(caminho_manifesto)) from e

        for nome, esperado in (manifesto.get("digests") or {}).items():
            caminho = pasta / nome
            if caminho.exists() and digestArquivo(caminho) != esperado:
                raise DataError("Tabela alterada depois da gravação (digest diferente)", str(caminho))

        ptus = _lerTabela(pasta / ARQUIVO_PTUS, COLUNAS_TEMPO[ARQUIVO_PTUS])
        soc = _lerTabela(pasta / ARQUIVO_SOC, COLUNAS_TEMPO[ARQUIVO_SOC])
        return SimulationResult(ptus, soc, dict(manifesto.get("metadata") or {}))


def saveResult(result: SimulationResult, pasta: str | Path) -> dict[str, Path]:
    return ResultRepository().save(result, pasta)


def loadResult(pasta: str | Path) -> SimulationResult:
    return ResultRepository().load(pasta)
