from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from src.Utils.errors import DomainError

PTU_HORAS = 0.5
TOLERANCIA_ENERGIA = 1e-9


def ptuOfDay(ts: pd.Timestamp) -> int:
    """Posição da PTU no dia de entrega (0 a 47)."""
    return int((ts - ts.normalize()) / pd.Timedelta(hours=PTU_HORAS))


def _congelar(valores) -> np.ndarray:
    arr = np.array(valores, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ForecastDistribution:
    """CDF preditiva empírica da energia PV de uma PTU.

    O quantil usa posições de plotagem (i - 0.5)/m com interpolação linear e
    satura nos valores extremos.
    """
    ptu_index: int
    sorted_values: np.ndarray
    plant_capacity: float

    def __post_init__(self):
        valores = _congelar(self.sorted_values)
        if valores.ndim != 1 or valores.size < 1:
            raise DomainError("A distribuição precisa de pelo menos um valor")
        if not np.all(np.isfinite(valores)):
            raise DomainError("Distribuição com valores não finitos")
        if np.any(np.diff(valores) < 0):
            raise DomainError("sorted_values deve ser não decrescente")
        limite = self.plant_capacity * PTU_HORAS
        if valores[0] < -TOLERANCIA_ENERGIA or valores[-1] > limite + TOLERANCIA_ENERGIA:
            raise DomainError(f"Valores fora de [0, {limite}] MWh")
        object.__setattr__(self, "sorted_values", valores)
        object.__setattr__(self, "_posicoes", (np.arange(valores.size) + 0.5) / valores.size)

    @classmethod
    def fromSamples(cls, amostras, plant_capacity: float, ptu_index: int = 0) -> "ForecastDistribution":
        limite = plant_capacity * PTU_HORAS
        valores = np.clip(np.sort(np.asarray(amostras, dtype=float)), 0.0, limite)
        return cls(ptu_index, valores, plant_capacity)

    @property
    def size(self) -> int:
        return self.sorted_values.size

    @property
    def isDegenerate(self) -> bool:
        return self.sorted_values[0] == self.sorted_values[-1]

    def quantile(self, tau: float) -> float:
        if not 0.0 < tau < 1.0:
            raise DomainError(f"tau deve estar em (0, 1): {tau}")
        return float(np.interp(tau, self._posicoes, self.sorted_values))

    def quantiles(self, taus) -> np.ndarray:
        # sem checagem de domínio: uso interno com uniformes da cópula
        return np.interp(taus, self._posicoes, self.sorted_values)

    def median(self) -> float:
        return self.quantile(0.5)

    def mean(self) -> float:
        return float(self.sorted_values.mean())

    def pit(self, valor: float) -> float:
        """Valor da CDF interpolada em `valor`, limitado às posições extremas."""
        if self.isDegenerate:
            return 0.5
        return float(np.interp(valor, self.sorted_values, self._posicoes))


@dataclass(frozen=True, eq=False)
class ScenarioSet:
    values: np.ndarray
    weights: np.ndarray = None
    plant_capacity: float | None = None

    def __post_init__(self):
        valores = np.array(self.values, dtype=float)
        if valores.ndim != 2 or valores.shape[0] < 1 or valores.shape[1] < 1:
            raise DomainError("ScenarioSet precisa de forma n_cenarios x horizonte, ambos >= 1")
        if self.weights is None:
            pesos = np.full(valores.shape[0], 1.0 / valores.shape[0])
        else:
            pesos = np.array(self.weights, dtype=float)
        if pesos.shape != (valores.shape[0],) or np.any(pesos < 0) or abs(pesos.sum() - 1.0) > 1e-9:
            raise DomainError("Pesos devem ser probabilidades que somam 1")
        if valores.min() < -TOLERANCIA_ENERGIA:
            raise DomainError("Cenário com energia negativa")
        if self.plant_capacity is not None and valores.max() > self.plant_capacity * PTU_HORAS + TOLERANCIA_ENERGIA:
            raise DomainError("Cenário acima da capacidade da planta")
        valores.flags.writeable = False
        pesos.flags.writeable = False
        object.__setattr__(self, "values", valores)
        object.__setattr__(self, "weights", pesos)

    @property
    def nScenarios(self) -> int:
        return self.values.shape[0]

    @property
    def horizonSteps(self) -> int:
        return self.values.shape[1]

    @property
    def isDeterministic(self) -> bool:
        return self.nScenarios == 1

    def truncate(self, passos: int) -> "ScenarioSet":
        return ScenarioSet(self.values[:, :passos], self.weights, self.plant_capacity)


@dataclass(frozen=True, eq=False)
class CopulaSpec:
    correlation: np.ndarray
    tolerancia: float = field(default=1e-10, repr=False)

    def __post_init__(self):
        c = np.array(self.correlation, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 1:
            raise DomainError("Correlação deve ser uma matriz quadrada")
        if not np.allclose(c, c.T, atol=1e-12):
            raise DomainError("Correlação deve ser simétrica")
        if not np.allclose(np.diag(c), 1.0, atol=1e-12):
            raise DomainError("Correlação deve ter diagonal unitária")
        autovalores = np.linalg.eigvalsh(c)
        if autovalores.min() < -self.tolerancia:
            raise DomainError(f"Correlação não é PSD (menor autovalor {autovalores.min():.3e})")
        c.flags.writeable = False
        object.__setattr__(self, "correlation", c)

    @property
    def dimension(self) -> int:
        return self.correlation.shape[0]

    @classmethod
    def identity(cls, dimensao: int) -> "CopulaSpec":
        return cls(np.eye(dimensao))

    @classmethod
    def exponential(cls, dimensao: int, decaimento: float) -> "CopulaSpec":
        if not 0.0 <= decaimento <= 1.0:
            raise DomainError(f"Decaimento deve estar em [0, 1]: {decaimento}")
        idx = np.arange(dimensao)
        return cls(decaimento ** np.abs(idx[:, None] - idx[None, :]))

    def squareRoot(self) -> np.ndarray:
        """Raiz simétrica da correlação com autovalores negativos zerados."""
        autovalores, autovetores = np.linalg.eigh(self.correlation)
        autovalores = np.clip(autovalores, 0.0, None)
        return (autovetores * np.sqrt(autovalores)) @ autovetores.T
