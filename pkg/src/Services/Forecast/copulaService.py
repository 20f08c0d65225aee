import logging

import numpy as np
from scipy import stats

from src.Models.forecastModel import CopulaSpec
from src.Utils.errors import DomainError

logger = logging.getLogger(__name__)


def nearestCorrelation(matriz: np.ndarray) -> np.ndarray:
    """Projeta em matriz PSD de diagonal unitária (corte de autovalores + reescala)."""
    simetrica = (matriz + matriz.T) / 2.0
    autovalores, autovetores = np.linalg.eigh(simetrica)
    psd = (autovetores * np.clip(autovalores, 0.0, None)) @ autovetores.T
    diagonal = np.sqrt(np.clip(np.diag(psd), 1e-300, None))
    corr = psd / np.outer(diagonal, diagonal)
    corr = (corr + corr.T) / 2.0
    np.fill_diagonal(corr, 1.0)
    return np.clip(corr, -1.0, 1.0)


def fitCopula(normalized_error_history) -> CopulaSpec:
    """Correlação empírica dos erros históricos levados ao domínio gaussiano.

    Cada coluna é um lead time; cada linha, uma emissão de previsão.
    """
    historico = np.asarray(normalized_error_history, dtype=float)
    if historico.ndim != 2 or historico.shape[0] < 2:
        raise DomainError("fitCopula precisa de pelo menos 2 linhas de histórico")

    n = historico.shape[0]
    uniformes = stats.rankdata(historico, axis=0) / (n + 1)
    gaussianos = stats.norm.ppf(uniformes)

    with np.errstate(invalid="ignore", divide="ignore"):
        corr = np.atleast_2d(np.corrcoef(gaussianos, rowvar=False))
    # coluna constante não tem correlação definida
    corr = np.nan_to_num(corr, nan=0.0)
    np.fill_diagonal(corr, 1.0)

    logger.debug(f"Cópula ajustada com {n} linhas e {corr.shape[0]} lead times")
    return CopulaSpec(nearestCorrelation(corr))
