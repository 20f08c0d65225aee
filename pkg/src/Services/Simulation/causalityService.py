import pandas as pd

from src.Utils.errors import CausalityError, DataError
from src.Utils.validators import PTU


class RealizedPvReader:
    """Acesso ao PV medido só depois do fim da PTU; cada leitura fica registrada."""

    def __init__(self, serie: pd.Series, registrar: bool = True):
        self._valores = dict(zip(serie.index, serie.to_numpy(dtype=float)))
        self.registrar = registrar
        self.acessos: list[tuple[pd.Timestamp, pd.Timestamp]] = []

    def __call__(self, alvo: pd.Timestamp, now: pd.Timestamp) -> float:
        if alvo + PTU > now:
            raise CausalityError(f"Leitura do PV de {alvo} em {now}, antes do fim da entrega")
        if self.registrar:
            self.acessos.append((alvo, now))
        try:
            return self._valores[alvo]
        except KeyError:
            raise DataError(f"PV ausente para {alvo}", None, None, "pv") from None
