import math
from dataclasses import dataclass, replace

from src.Utils.errors import DomainError


@dataclass(frozen=True)
class PriceRecord:
    """Preço spot e os dois preços de desequilíbrio de uma PTU (€/MWh).

    Nenhuma ordem entre os três preços é assumida; preços negativos são válidos.
    """
    spot: float
    pos_imbalance_price: float
    neg_imbalance_price: float

    def __post_init__(self):
        for nome in ("spot", "pos_imbalance_price", "neg_imbalance_price"):
            valor = getattr(self, nome)
            if not math.isfinite(valor):
                raise DomainError(f"Preço {nome} não finito: {valor}")

    @property
    def isInverted(self) -> bool:
        return self.neg_imbalance_price < self.pos_imbalance_price


@dataclass(frozen=True)
class MarketPosition:
    ptu_index: int
    day_ahead_pv_part: float = 0.0
    day_ahead_bess_part: float = 0.0
    intraday_energy: float = 0.0
    intraday_price: float = 0.0

    @property
    def day_ahead_energy(self) -> float:
        return self.day_ahead_pv_part + self.day_ahead_bess_part

    def withIntraday(self, energia: float, preco: float) -> "MarketPosition":
        return replace(self, intraday_energy=energia, intraday_price=preco)


@dataclass(frozen=True)
class SettlementRecord:
    ptu_index: int
    delivered_pv: float
    delivered_bess: float
    intraday_energy: float
    day_ahead_energy: float
    imbalance: float
    revenue: float
    aging_cost: float
    penalized_revenue: float
