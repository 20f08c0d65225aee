import numpy as np
import pandas as pd

from src.Utils.errors import DataError

PTU = pd.Timedelta(minutes=30)


def validarTimestampsUtc(indice: pd.DatetimeIndex, arquivo: str | None = None, coluna: str = "timestamp"):
    if indice.tz is None or str(indice.tz) != "UTC":
        raise DataError("Timestamps devem estar em UTC (ISO-8601 com sufixo Z ou +00:00)", arquivo, None, coluna)

    if len(indice) > 1:
        passos = np.diff(indice.asi8)
        ruins = np.flatnonzero(passos <= 0)
        if ruins.size:
            # +2: cabeçalho e base 1
            raise DataError("Timestamps devem ser estritamente crescentes", arquivo, int(ruins[0]) + 3, coluna)


def timestampsFaltantes(indice: pd.DatetimeIndex, inicio: pd.Timestamp, fim: pd.Timestamp) -> list[pd.Timestamp]:
    esperado = pd.date_range(inicio, fim, freq=PTU, inclusive="left")
    return list(esperado.difference(indice))


def validarFinitos(df: pd.DataFrame, colunas: list[str], arquivo: str | None = None):
    for coluna in colunas:
        valores = df[coluna].to_numpy(dtype=float)
        ruins = np.flatnonzero(~np.isfinite(valores))
        if ruins.size:
            raise DataError("Valor ausente ou não finito", arquivo, int(ruins[0]) + 2, coluna)


def validarFaixa(df: pd.DataFrame, coluna: str, minimo: float, maximo: float, arquivo: str | None = None, tolerancia: float = 1e-9):
    valores = df[coluna].to_numpy(dtype=float)
    ruins = np.flatnonzero((valores < minimo - tolerancia) | (valores > maximo + tolerancia))
    if ruins.size:
        i = int(ruins[0])
        raise DataError(f"Valor {valores[i]} fora de [{minimo}, {maximo}]", arquivo, i + 2, coluna)
