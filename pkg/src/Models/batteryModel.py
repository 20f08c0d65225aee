import math
from dataclasses import dataclass

from src.Utils.errors import DomainError


@dataclass(frozen=True)
class BatteryParams:
    capacity: float
    charge_efficiency: float = 0.95
    discharge_efficiency: float = 0.95
    power_limit: float = math.inf
    replacement_cost: float = 0.0
    cycles_at_full_depth: float = 5000.0
    woehler_exponent: float = 1.1
    initial_soc: float = 0.5
    # modo de dimensionamento: sem limites de SOC, eficiências e carga só por PV mantidas
    unbounded: bool = False

    def __post_init__(self):
        if not self.capacity > 0:
            raise DomainError(f"capacity deve ser > 0: {self.capacity}")
        for nome in ("charge_efficiency", "discharge_efficiency"):
            valor = getattr(self, nome)
            if not 0.0 < valor <= 1.0:
                raise DomainError(f"{nome} deve estar em (0, 1]: {valor}")
        if not self.power_limit > 0:
            raise DomainError(f"power_limit deve ser > 0: {self.power_limit}")
        if not self.cycles_at_full_depth > 0:
            raise DomainError("cycles_at_full_depth deve ser > 0")
        if not self.woehler_exponent >= 1:
            raise DomainError("woehler_exponent deve ser >= 1")
        if self.replacement_cost < 0:
            raise DomainError("replacement_cost não pode ser negativo")
        if not self.unbounded and not 0.0 <= self.initial_soc <= 1.0:
            raise DomainError(f"initial_soc deve estar em [0, 1]: {self.initial_soc}")

    @property
    def agingCostPerMwh(self) -> float:
        """Proxy linear de envelhecimento usado dentro dos LPs (€/MWh movimentado)."""
        return self.replacement_cost / (2.0 * self.cycles_at_full_depth * self.capacity)

    def initialState(self) -> "BatteryState":
        return BatteryState(self.initial_soc)


@dataclass(frozen=True)
class BatteryState:
    soc: float

    def __post_init__(self):
        if not math.isfinite(self.soc):
            raise DomainError(f"SOC não finito: {self.soc}")

    def content(self, params: BatteryParams) -> float:
        return self.soc * params.capacity
