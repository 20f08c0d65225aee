"""Leitura e validação dos arquivos de entrada (preços, PV realizado, previsões).

Os nomes de coluna são reconhecidos por sinônimos; todo erro informa arquivo, linha e coluna.
"""
import logging
import re
import unicodedata
from pathlib import Path

import numpy as np
import pandas as pd

from src.Models.forecastModel import PTU_HORAS
from src.Services.Forecast.forecastStoreService import ForecastStore
from src.Utils.errors import DataError, ForecastError
from src.Utils.validators import validarFaixa, validarFinitos, validarTimestampsUtc

logger = logging.getLogger(__name__)

COLUNAS_SINONIMAS = {
    "timestamp": ["timestamp", "time", "datetime", "data_hora", "ptu_start"],
    "spot": ["spot", "spot_price", "preco_spot", "pi_s", "da_price"],
    "pos_imbalance_price": ["pos_imbalance_price", "pi_plus", "imbalance_pos", "preco_positivo"],
    "neg_imbalance_price": ["neg_imbalance_price", "pi_minus", "imbalance_neg", "preco_negativo"],
    "pv": ["pv", "energy", "energia", "pv_mwh", "e_pv", "production"],
    "issue_time": ["issue_time", "issue", "emissao", "forecast_time"],
    "target_time": ["target_time", "target", "alvo", "valid_time"],
}
COLUNAS_PRECOS = ["timestamp", "spot", "pos_imbalance_price", "neg_imbalance_price"]
COLUNAS_PV = ["timestamp", "pv"]
COLUNAS_PREVISAO = ["issue_time", "target_time"]
PADRAO_MEMBRO = re.compile(r"^(q\d+|m\d+|member_?\d+)$")


def normalizarColunas(col) -> str:
    col = str(col).lower().strip().replace(" ", "_")
    return unicodedata.normalize("NFKD", col).encode("ASCII", "ignore").decode()


def mapearColunas(df: pd.DataFrame, necessarias: list[str], arquivo: str) -> dict:
    encontradas = {}
    cols_norm = [normalizarColunas(col) for col in df.columns]
    for padrao in necessarias:
        for nome in COLUNAS_SINONIMAS[padrao]:
            if nome in cols_norm:
                encontradas[df.columns[cols_norm.index(nome)]] = padrao
                break
        else:
            raise DataError(f"Coluna obrigatória não encontrada. Colunas atuais: {df.columns.tolist()}", arquivo, 1, padrao)
    return encontradas


def lerCsv(caminho: str | Path) -> pd.DataFrame:
    caminho = Path(caminho)
    if not caminho.exists():
        raise DataError(f"Arquivo não encontrado: {caminho}", str(caminho))
    try:
        df = pd.read_csv(caminho, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError(f"Arquivo ilegível: {e}", str(caminho)) from e
    if df.empty:
        raise DataError("Arquivo sem linhas de dados", str(caminho))
    return df


def converterTimestamps(df: pd.DataFrame, coluna: str, arquivo: str) -> pd.Series:
    texto = df[coluna].str.strip()
    convertidos = pd.to_datetime(texto, errors="coerce", utc=True, format="ISO8601")
    ruins = np.flatnonzero(convertidos.isna().to_numpy())
    if ruins.size:
        i = int(ruins[0])
        raise DataError(f"Timestamp inválido: {texto.iloc[i]!r}", arquivo, i + 2, coluna)
    # só UTC explícito: Z ou +00:00
    fora_utc = ~texto.str.contains(r"(?:Z|[+-]00:?00)$", regex=True)
    if fora_utc.any():
        i = int(np.flatnonzero(fora_utc.to_numpy())[0])
        raise DataError(f"Timestamp fora de UTC: {texto.iloc[i]!r}", arquivo, i + 2, coluna)
    return convertidos


def converterNumeros(df: pd.DataFrame, colunas: list[str], arquivo: str) -> pd.DataFrame:
    for coluna in colunas:
        numeros = pd.to_numeric(df[coluna].str.strip(), errors="coerce")
        ruins = np.flatnonzero(numeros.isna().to_numpy())
        if ruins.size:
            i = int(ruins[0])
            raise DataError(f"Valor não numérico: {df[coluna].iloc[i]!r}", arquivo, i + 2, coluna)
        df[coluna] = numeros.astype(float)
    validarFinitos(df, colunas, arquivo)
    return df


class PriceRepository:
    def load(self, caminho: str | Path) -> pd.DataFrame:
        arquivo = str(caminho)
        df = lerCsv(caminho)
        df = df.rename(columns=mapearColunas(df, COLUNAS_PRECOS, arquivo))[COLUNAS_PRECOS]
        df["timestamp"] = converterTimestamps(df, "timestamp", arquivo)
        df = converterNumeros(df, COLUNAS_PRECOS[1:], arquivo)
        indice = pd.DatetimeIndex(df["timestamp"])
        validarTimestampsUtc(indice, arquivo)
        logger.info(f"Preços lidos de {arquivo}: {len(df)} PTUs")
        return df.set_index("timestamp")


class PvRepository:
    def load(self, caminho: str | Path, capacidade_mwp: float) -> pd.Series:
        arquivo = str(caminho)
        df = lerCsv(caminho)
        df = df.rename(columns=mapearColunas(df, COLUNAS_PV, arquivo))[COLUNAS_PV]
        df["timestamp"] = converterTimestamps(df, "timestamp", arquivo)
        df = converterNumeros(df, ["pv"], arquivo)
        validarFaixa(df, "pv", 0.0, capacidade_mwp * PTU_HORAS, arquivo)
        indice = pd.DatetimeIndex(df["timestamp"])
        validarTimestampsUtc(indice, arquivo)
        logger.info(f"PV lido de {arquivo}: {len(df)} PTUs")
        return pd.Series(df["pv"].clip(0.0, capacidade_mwp * PTU_HORAS).to_numpy(), index=indice, name="pv")


class ForecastRepository:
    """Aceita colunas de quantis (q01..q99) ou membros de ensemble (m01.., member_1..)."""

    def load(self, caminho: str | Path, capacidade_mwp: float) -> ForecastStore:
        arquivo = str(caminho)
        df = lerCsv(caminho)
        df = df.rename(columns=mapearColunas(df, COLUNAS_PREVISAO, arquivo))
        membros = [c for c in df.columns if PADRAO_MEMBRO.match(normalizarColunas(c))]
        if not membros:
            raise ForecastError("Nenhuma coluna de quantil ou membro encontrada", arquivo, 1, None)
        for coluna in COLUNAS_PREVISAO:
            df[coluna] = converterTimestamps(df, coluna, arquivo)
        df = converterNumeros(df, membros, arquivo)

        limite = capacidade_mwp * PTU_HORAS
        for coluna in membros:
            validarFaixa(df, coluna, 0.0, limite, arquivo, tolerancia=1e-6)
        depois = np.flatnonzero((df["issue_time"] > df["target_time"]).to_numpy())
        if depois.size:
            raise ForecastError("issue_time posterior a target_time", arquivo, int(depois[0]) + 2, "issue_time")

        store = ForecastStore.fromFrame(df, membros, capacidade_mwp)
        logger.info(f"Previsões lidas de {arquivo}: {len(store)} distribuições com {len(membros)} valores")
        return store
