"""Dinâmica da bateria. Comando positivo = descarga para a rede; negativo = carga vinda do PV.

Perdas de carga ficam entre o PV e a célula (armazenado = η_ch·retirado);
perdas de descarga entre a célula e a rede (entregue = η_Dis·retirado da célula).
"""
import math

from src.Models.batteryModel import BatteryParams, BatteryState
from src.Utils.errors import ConstraintViolationError, DomainError

TOLERANCIA_SOC = 1e-9


def feasibleCommandRange(state: BatteryState, params: BatteryParams, pv_energy: float) -> tuple[float, float]:
    if pv_energy < 0:
        raise DomainError(f"pv_energy não pode ser negativo: {pv_energy}")

    limite_pv = -params.charge_efficiency * pv_energy
    if params.unbounded:
        return max(limite_pv, -params.power_limit), params.power_limit

    soc = min(max(state.soc, 0.0), 1.0)
    hi = min(params.discharge_efficiency * params.capacity * soc, params.power_limit)
    lo = max(
        limite_pv,
        -(params.capacity * (1.0 - soc)) / params.charge_efficiency,
        -params.power_limit,
    )
    return lo, hi


def nextSoc(soc: float, params: BatteryParams, command: float) -> float:
    if command >= 0:
        return soc - command / (params.discharge_efficiency * params.capacity)
    return soc - command * params.charge_efficiency / params.capacity


def step(state: BatteryState, params: BatteryParams, command: float, pv_energy: float) -> BatteryState:
    if not math.isfinite(command):
        raise DomainError(f"Comando não finito: {command}")
    lo, hi = feasibleCommandRange(state, params, pv_energy)
    tolerancia = TOLERANCIA_SOC * max(1.0, params.capacity)
    if command > hi + tolerancia:
        limite = "power_limit" if (params.unbounded or hi == params.power_limit) else "discharge_soc"
        raise ConstraintViolationError(f"Comando {command:.9g} acima do máximo {hi:.9g}", limite)
    if command < lo - tolerancia:
        if lo == -params.power_limit:
            limite = "power_limit"
        elif lo == -params.charge_efficiency * pv_energy:
            limite = "pv_only_charging"
        else:
            limite = "charge_soc"
        raise ConstraintViolationError(f"Comando {command:.9g} abaixo do mínimo {lo:.9g}", limite)

    soc = nextSoc(state.soc, params, command)
    if params.unbounded:
        return BatteryState(soc)
    if soc < -TOLERANCIA_SOC or soc > 1.0 + TOLERANCIA_SOC:
        raise ConstraintViolationError(f"SOC resultante {soc:.12g} fora de [0, 1]", "soc_bounds")
    return BatteryState(min(max(soc, 0.0), 1.0))


def truncateCommand(state: BatteryState, params: BatteryParams, command: float, pv_energy: float) -> float:
    """Leva o comando planejado para a faixa viável com o PV realizado."""
    lo, hi = feasibleCommandRange(state, params, pv_energy)
    return min(max(command, lo), hi)
