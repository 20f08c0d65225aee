import math

from src.Utils.errors import DataError


def Conversor(valor, arquivo: str | None = None, linha: int | None = None, coluna: str | None = None) -> float:
    if valor is None:
        raise DataError("Valor ausente", arquivo, linha, coluna)

    if isinstance(valor, str):
        valor = valor.strip()
        if valor == "":
            raise DataError("Valor vazio", arquivo, linha, coluna)
    try:
        numero = float(valor)
    except (ValueError, TypeError):
        raise DataError(f"Valor não numérico: {valor!r}", arquivo, linha, coluna)

    if not math.isfinite(numero):
        raise DataError(f"Valor não finito: {valor!r}", arquivo, linha, coluna)
    return numero
