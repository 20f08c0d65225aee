"""Dimensionamento a posteriori, curvas de redução de desequilíbrio e deltas de receita.

Percentuais são calculados em aritmética racional exata sobre os totais armazenados.
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pandas as pd

from src.Config import settings
from src.Models.batteryModel import BatteryParams
from src.Models.controlModel import MpcConfig, Objective
from src.Models.simulationModel import SettlementTotals, SimulationResult
from src.Models.sizingModel import (
    BENCHMARK_STRATEGY,
    STRATEGIES,
    RevenueReport,
    SizingReport,
    Strategy,
    StudyInputs,
)
from src.Services.Simulation.settleService import settle
from src.Services.Simulation.simulatorService import SimulatorService
from src.Utils.errors import DomainError

logger = logging.getLogger(__name__)

BASELINE_LABEL = "No BESS, without ID"


def requiredCapacity(energy_trace) -> float:
    trace = np.asarray(energy_trace, dtype=float)
    if trace.size == 0:
        raise DomainError("Trajetória de conteúdo vazia")
    return float(trace.max() - trace.min())


def _percentual(parte: Fraction, base: Fraction) -> float:
    return float(Fraction(100) * parte / base)


def sizeReduction(benchmark_capacity: float, strategy_capacity: float) -> float:
    if not benchmark_capacity > 0:
        raise DomainError(f"Capacidade de referência deve ser > 0: {benchmark_capacity}")
    base = Fraction(benchmark_capacity)
    return _percentual(Fraction(strategy_capacity) - base, base)


def revenueDelta(strategy: SettlementTotals, baseline: SettlementTotals) -> float:
    if baseline.revenue == 0:
        raise DomainError("Receita de referência nula")
    base = Fraction(baseline.revenue)
    return _percentual(Fraction(strategy.revenue) - base, base)


def _desequilibrioAbsoluto(result: SimulationResult) -> Fraction:
    return sum((Fraction(abs(v)) for v in result.ptus["imbalance"].to_numpy(dtype=float)), Fraction(0))


def _validarPeriodo(result: SimulationResult, benchmark: SimulationResult):
    if not result.ptus["timestamp"].reset_index(drop=True).equals(benchmark.ptus["timestamp"].reset_index(drop=True)):
        raise DomainError(f"Período de '{result.label}' difere do benchmark '{benchmark.label}'")


def imbalanceReduction(result: SimulationResult, benchmark: SimulationResult) -> float:
    _validarPeriodo(result, benchmark)
    base = _desequilibrioAbsoluto(benchmark)
    if base == 0:
        raise DomainError("Benchmark sem desequilíbrio: redução indefinida")
    return _percentual(base - _desequilibrioAbsoluto(result), base)


def imbalanceReductionCurve(results: list[SimulationResult], benchmark: SimulationResult) -> pd.DataFrame:
    """Pontos (estratégia, redução %) de cada resultado frente ao benchmark."""
    return pd.DataFrame(
        [{"strategy": r.label, "reduction_pct": imbalanceReduction(r, benchmark)} for r in results],
        columns=["strategy", "reduction_pct"],
    )


def cumulativeImbalanceCurve(results: list[SimulationResult], benchmark: SimulationResult) -> pd.DataFrame:
    """Desequilíbrio absoluto acumulado de cada estratégia, normalizado pelo total do benchmark."""
    total = float(np.abs(benchmark.ptus["imbalance"]).sum())
    if total == 0:
        raise DomainError("Benchmark sem desequilíbrio: curva indefinida")
    quadros = []
    for r in [benchmark, *results]:
        _validarPeriodo(r, benchmark)
        quadros.append(pd.DataFrame({
            "timestamp": r.ptus["timestamp"],
            "strategy": r.label,
            "cumulative_normalized_imbalance": np.abs(r.ptus["imbalance"]).cumsum() / total,
        }))
    return pd.concat(quadros, ignore_index=True)


def sizingReports(results: dict[str, SimulationResult], baseline: SimulationResult,
                  plant_capacity: float) -> list[SizingReport]:
    """Linhas da tabela de tamanhos: capacidade a posteriori, redução frente ao benchmark e ao baseline."""
    tamanhos = {s.label: requiredCapacity(results[s.label].contentTrace) for s in STRATEGIES}
    tamanho_benchmark = tamanhos[BENCHMARK_STRATEGY.label]
    relatorios = []
    for s in STRATEGIES:
        tamanho = tamanhos[s.label]
        relatorios.append(SizingReport(
            strategy=s.label,
            required_capacity_mwh=tamanho,
            required_capacity_mwh_per_mwp=tamanho / plant_capacity,
            reduction_vs_benchmark=sizeReduction(tamanho_benchmark, tamanho) if tamanho_benchmark > 0 else 0.0,
            imbalance_reduction=imbalanceReduction(results[s.label], baseline),
        ))
    return relatorios


def revenueReports(results: dict[str, SimulationResult], baseline: SimulationResult) -> list[RevenueReport]:
    base = settle(baseline)
    relatorios = [RevenueReport(BASELINE_LABEL, base.revenue, base.penalized_revenue, base.aging_cost, 0.0)]
    for s in STRATEGIES:
        t = settle(results[s.label])
        relatorios.append(RevenueReport(s.label, t.revenue, t.penalized_revenue, t.aging_cost, revenueDelta(t, base)))
    return relatorios


class SizingService:
    """Roda as estratégias sobre as mesmas entradas; rodadas independentes vão em paralelo."""

    def __init__(self, inputs: StudyInputs, battery: BatteryParams, mpc: MpcConfig, workers: int | None = None):
        self.inputs = inputs
        self.battery = battery
        self.mpc = mpc
        self.workers = workers or settings.workers()

    def _rodar(self, battery: BatteryParams | None, config: MpcConfig) -> SimulationResult:
        entrada = self.inputs
        return SimulatorService(
            entrada.agg, entrada.prices, battery, config, entrada.seed,
            entrada.period_start, entrada.period_end, entrada.config_digest,
        ).run()

    def _configPara(self, strategy: Strategy, objective: Objective) -> MpcConfig:
        return replace(self.mpc, use_intraday=strategy.use_intraday, mode=strategy.mode, objective=objective)

    def _paralelo(self, tarefas: dict) -> dict:
        resultados = {}
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {executor.submit(self._rodar, bateria, config): chave for chave, (bateria, config) in tarefas.items()}
            for future in as_completed(futures):
                chave = futures[future]
                resultados[chave] = future.result()
                logger.info(f"Rodada '{chave}' concluída")
        return resultados

    def _capacidadePlanta(self) -> float:
        return sum(p.capacity for p in self.inputs.agg.plants)

    def baseline(self, objective: Objective) -> tuple:
        return None, replace(self.mpc, use_intraday=False, objective=objective)

    def unboundedBattery(self) -> BatteryParams:
        # conteúdo começa em 0 e pode ficar negativo (pré-carga virtual), sem envelhecimento
        return replace(self.battery, capacity=self._capacidadePlanta(), initial_soc=0.0, replacement_cost=0.0,
                       unbounded=True)

    def sizingStudy(self) -> tuple[list[SizingReport], dict[str, SimulationResult]]:
        ilimitada = self.unboundedBattery()
        tarefas = {s.label: (ilimitada, self._configPara(s, Objective.IMBALANCE_MIN)) for s in STRATEGIES}
        tarefas[BASELINE_LABEL] = self.baseline(Objective.IMBALANCE_MIN)
        resultados = self._paralelo(tarefas)
        relatorios = sizingReports(resultados, resultados[BASELINE_LABEL], self._capacidadePlanta())
        return relatorios, resultados

    def capacitySweep(self, capacidades: list[float]) -> pd.DataFrame:
        """Redução de desequilíbrio por capacidade normalizada (MWh/MWp) e estratégia."""
        capacidade_planta = self._capacidadePlanta()
        tarefas = {BASELINE_LABEL: self.baseline(Objective.IMBALANCE_MIN)}
        for c in capacidades:
            bateria = replace(self.battery, capacity=c * capacidade_planta, unbounded=False)
            for s in STRATEGIES:
                tarefas[(s.label, c)] = (bateria, self._configPara(s, Objective.IMBALANCE_MIN))
        resultados = self._paralelo(tarefas)
        referencia = resultados.pop(BASELINE_LABEL)

        pontos = [
            {"strategy": label, "capacity_mwh_per_mwp": c, "reduction_pct": imbalanceReduction(r, referencia)}
            for (label, c), r in resultados.items()
        ]
        return pd.DataFrame(pontos).sort_values(["strategy", "capacity_mwh_per_mwp"], ignore_index=True)

    def revenueStudy(self, capacidade_mwh_por_mwp: float = 1.0) -> tuple[list[RevenueReport], dict[str, SimulationResult]]:
        bateria = replace(self.battery, capacity=capacidade_mwh_por_mwp * self._capacidadePlanta(), unbounded=False)
        tarefas = {s.label: (bateria, self._configPara(s, Objective.REVENUE_MAX)) for s in STRATEGIES}
        tarefas[BASELINE_LABEL] = self.baseline(Objective.REVENUE_MAX)
        resultados = self._paralelo(tarefas)
        return revenueReports(resultados, resultados[BASELINE_LABEL]), resultados
