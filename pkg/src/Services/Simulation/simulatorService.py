"""Replay em horizonte rolante com relógio de 30 minutos.

Ordem em cada tick `t`:
  1. às 12:00, lances day-ahead das 48 PTUs do dia seguinte;
  2. com intra-day, lance da PTU que começa em t + 30 min (gate fecha em t);
  3. controle em tempo real da PTU que começa em t;
  4. em t + 30 min, PV realizado, passo da bateria e liquidação.
"""
import logging
from dataclasses import asdict

import numpy as np
import pandas as pd

from src.Models.batteryModel import BatteryParams, BatteryState
from src.Models.controlModel import DecisionSet, MpcConfig, Objective
from src.Models.marketModel import MarketPosition, PriceRecord
from src.Models.simulationModel import AggregationSpec, SimulationResult
from src.Services.Battery.batteryService import step, truncateCommand
from src.Services.Battery.rainflowService import attributeAgingCost
from src.Services.Control.biddingService import dayAheadBidImbalance, intradayBidImbalance, intradayBidRevenue
from src.Services.Control.dayAheadRevenueService import dayAheadBidRevenue
from src.Services.Control.priceForecastService import PriceForecastService
from src.Services.Control.realtimeService import planRealtimeImbalance, planRealtimeRevenue
from src.Services.Forecast.scenarioService import buildScenarioSet
from src.Services.Market.settlementService import settlePtu
from src.Services.Simulation.aggregationService import aggregateSpec
from src.Services.Simulation.calibrationService import CopulaCalibrator
from src.Services.Simulation.causalityService import RealizedPvReader
from src.Utils.digest import digestConfig
from src.Utils.errors import ConstraintViolationError, DataError
from src.Utils.validators import PTU, timestampsFaltantes

logger = logging.getLogger(__name__)

DAY_AHEAD_HOUR = 12
PTUS_DIA = 48
COLUNAS_DECISAO = ("da_decided_at", "id_decided_at", "rt_decided_at")
ESTAGIO_DA, ESTAGIO_RT = 0, 1


class SimulatorService:
    def __init__(self, agg: AggregationSpec, prices: pd.DataFrame, battery: BatteryParams | None,
                 config: MpcConfig, seed: int, period_start: pd.Timestamp, period_end: pd.Timestamp,
                 config_digest: str | None = None):
        self.inicio = pd.Timestamp(period_start)
        self.fim = pd.Timestamp(period_end)
        if self.inicio.tz is None or self.fim.tz is None:
            raise DataError("Período deve estar em UTC")
        if self.inicio != self.inicio.normalize() or self.fim != self.fim.normalize() or self.fim <= self.inicio:
            raise DataError(f"Período deve começar e terminar à meia-noite UTC, com fim > início: {self.inicio} a {self.fim}")

        self.planta = aggregateSpec(agg, seed)
        self.precos = prices
        self.bateria = battery
        self.config = config
        self.seed = int(seed)
        self.config_digest = config_digest
        self._validarCobertura()

        self.leitor_pv = RealizedPvReader(self.planta.pv_series)
        self.previsor_precos = PriceForecastService(prices)
        self.calibrador = CopulaCalibrator(
            self.planta.forecast_store, self.leitor_pv, config.horizon_steps,
            config.copula_method, config.copula_decay, self.inicio - pd.Timedelta(days=1),
        )
        self.posicoes: dict[pd.Timestamp, MarketPosition] = {}
        self.decisoes = DecisionSet()
        self.estado: BatteryState | None = battery.initialState() if battery else None

    def _validarCobertura(self):
        inicio_dados = self.inicio - pd.Timedelta(days=1)
        for nome, indice in (("pv", self.planta.pv_series.index), ("preços", self.precos.index)):
            faltantes = timestampsFaltantes(indice, inicio_dados, self.fim)
            if faltantes:
                exemplo = ", ".join(str(t) for t in faltantes[:5])
                raise DataError(f"Dados de {nome} sem {len(faltantes)} timestamps do período e do dia de antecedência: {exemplo}")

    def _indice(self, ts: pd.Timestamp) -> int:
        return int((ts - self.inicio) / PTU)

    def _seed(self, tick: int, estagio: int) -> list[int]:
        return [self.seed, tick, estagio]

    def _marginais(self, alvos, now, estrito: bool = False):
        return [self.planta.forecast_store.latest(alvo, now, strict=estrito) for alvo in alvos]

    def _cenarios(self, alvos, now, tick: int, estagio: int, estrito: bool = False):
        marginais = self._marginais(alvos, now, estrito)
        copula = self.calibrador.copula(len(alvos))
        return buildScenarioSet(marginais, copula, self.config.effectiveScenarios, self._seed(tick, estagio))

    def _usaRevenue(self) -> bool:
        return self.config.objective is Objective.REVENUE_MAX

    def _dayAhead(self, dia: pd.Timestamp, now: pd.Timestamp, tick: int):
        alvos = list(pd.date_range(dia, periods=PTUS_DIA, freq=PTU))
        alvos = [a for a in alvos if a < self.fim]
        if self._usaRevenue():
            cenarios = self._cenarios(alvos, now, tick, ESTAGIO_DA)
            precos = self.previsor_precos.forecastWindow(alvos, now)
            lances_pv, lances_bess = dayAheadBidRevenue(cenarios, precos, self.estado, self.bateria, self.config)
        else:
            lances_pv = dayAheadBidImbalance(self._marginais(alvos, now))
            lances_bess = [0.0] * len(alvos)

        for alvo, pv, bess in zip(alvos, lances_pv, lances_bess):
            self.posicoes[alvo] = MarketPosition(self._indice(alvo), float(pv), float(bess))
            self.decisoes.fixDayAhead(alvo, pv, bess, now)
        logger.debug(f"Lances day-ahead de {dia.date()}: {sum(lances_pv) + sum(lances_bess):.3f} MWh")

    def _lanceIntraday(self, alvo: pd.Timestamp, now: pd.Timestamp, estrito: bool = False) -> tuple[float, float]:
        posicao = self.posicoes[alvo]
        dist = self.planta.forecast_store.latest(alvo, now, strict=estrito)
        if self._usaRevenue():
            precos = self.previsor_precos.forecast(alvo, now)
            return intradayBidRevenue(posicao, dist, precos, now, alvo), precos.spot
        spot = self.previsor_precos.forecast(alvo, now).spot
        return intradayBidImbalance(posicao, dist, now, alvo), spot

    def _intraday(self, alvo: pd.Timestamp, now: pd.Timestamp):
        energia, preco = self._lanceIntraday(alvo, now)
        self.posicoes[alvo] = self.posicoes[alvo].withIntraday(energia, preco)
        self.decisoes.fixIntraday(alvo, energia, now)

    def _posicoesHorizonte(self, alvos, now) -> list[MarketPosition]:
        posicoes = []
        for alvo in alvos:
            posicao = self.posicoes[alvo]
            gate_aberto = alvo - PTU > now
            if self.config.use_intraday and gate_aberto:
                # posição intra-day projetada com a previsão atual
                energia, preco = self._lanceIntraday(alvo, now, estrito=True)
                posicao = posicao.withIntraday(energia, preco)
            posicoes.append(posicao)
        return posicoes

    def _tempoReal(self, alvo: pd.Timestamp, now: pd.Timestamp, tick: int) -> tuple[float, dict]:
        # só previsões emitidas antes do início da entrega
        dist = self.planta.forecast_store.latest(alvo, now, strict=True)
        diagnostico = {
            "forecast_median": dist.median(),
            "forecast_spread": dist.quantiles([0.9])[0] - dist.quantiles([0.1])[0],
            "rt_expected_objective": np.nan,
        }
        if self.bateria is None:
            self.decisoes.fixCommand(alvo, 0.0, now)
            return 0.0, diagnostico

        alvos = []
        for k in range(self.config.horizon_steps):
            candidato = alvo + k * PTU
            if candidato >= self.fim or candidato not in self.posicoes:
                break
            alvos.append(candidato)

        cenarios = self._cenarios(alvos, now, tick, ESTAGIO_RT, estrito=True)
        posicoes = self._posicoesHorizonte(alvos, now)
        if self._usaRevenue():
            precos = self.previsor_precos.forecastWindow(alvos, now)
            plano = planRealtimeRevenue(self.estado, self.bateria, cenarios, posicoes, precos, self.config)
        else:
            plano = planRealtimeImbalance(self.estado, self.bateria, cenarios, posicoes, self.config)
        diagnostico["rt_expected_objective"] = plano.expected_objective
        self.decisoes.fixCommand(alvo, plano.firstCommand, now)
        return plano.firstCommand, diagnostico

    def _executar(self, alvo: pd.Timestamp, comando: float, now: pd.Timestamp) -> tuple[float, float]:
        pv = self.leitor_pv(alvo, now)
        if self.bateria is None:
            return pv, 0.0
        executado = truncateCommand(self.estado, self.bateria, comando, pv)
        if executado != comando:
            logger.debug(f"Comando de {alvo} truncado de {comando:.6f} para {executado:.6f} MWh")
        try:
            self.estado = step(self.estado, self.bateria, executado, pv)
        except ConstraintViolationError as e:
            raise ConstraintViolationError(f"PTU {alvo}: {e}", e.bound) from e
        return pv, executado

    def run(self) -> SimulationResult:
        logger.info(f"Simulação {self.config.label} de {self.inicio.date()} a {self.fim.date()} (planta {self.planta.name})")
        registros = []
        socs = [self.estado.soc if self.estado else np.nan]
        relogio = self.inicio - pd.Timedelta(hours=DAY_AHEAD_HOUR)
        tick = 0

        while relogio < self.fim:
            if relogio.hour == DAY_AHEAD_HOUR and relogio.minute == 0:
                self.calibrador.refit(relogio)
                dia = relogio.normalize() + pd.Timedelta(days=1)
                if self.inicio <= dia < self.fim:
                    self._dayAhead(dia, relogio, tick)

            proxima = relogio + PTU
            if self.config.use_intraday and self.inicio <= proxima < self.fim:
                self._intraday(proxima, relogio)

            if self.inicio <= relogio < self.fim:
                comando, diagnostico = self._tempoReal(relogio, relogio, tick)
                pv, executado = self._executar(relogio, comando, relogio + PTU)
                socs.append(self.estado.soc if self.estado else np.nan)
                registros.append((relogio, pv, comando, executado, diagnostico))
                if relogio.hour == 23 and relogio.minute == 30:
                    logger.info(f"Dia {relogio.date()} simulado")

            relogio = proxima
            tick += 1

        return self._resultado(registros, np.array(socs))

    def _resultado(self, registros, socs: np.ndarray) -> SimulationResult:
        if self.bateria is not None and not self.bateria.unbounded:
            custos = attributeAgingCost(socs, self.bateria)
        else:
            custos = np.zeros(len(registros))

        linhas = []
        for (alvo, pv, comando, executado, diagnostico), custo, soc in zip(registros, custos, socs[1:]):
            posicao = self.posicoes[alvo]
            precos: PriceRecord = self.previsor_precos.realized(alvo, alvo + PTU)
            liquidacao = settlePtu(pv, executado, posicao, precos, float(custo))
            decisoes = self.decisoes.decisionTimes(alvo)
            linhas.append({
                "timestamp": alvo,
                "ptu_index": posicao.ptu_index,
                "day_ahead_pv_part": posicao.day_ahead_pv_part,
                "day_ahead_bess_part": posicao.day_ahead_bess_part,
                "day_ahead_energy": posicao.day_ahead_energy,
                "intraday_energy": posicao.intraday_energy,
                "intraday_price": posicao.intraday_price,
                "delivered_pv": pv,
                "planned_command": comando,
                "delivered_bess": executado,
                "imbalance": liquidacao.imbalance,
                "spot": precos.spot,
                "pos_imbalance_price": precos.pos_imbalance_price,
                "neg_imbalance_price": precos.neg_imbalance_price,
                "revenue": liquidacao.revenue,
                "aging_cost": liquidacao.aging_cost,
                "penalized_revenue": liquidacao.penalized_revenue,
                "soc_end": soc,
                "da_decided_at": decisoes.get("da_decided_at"),
                "id_decided_at": decisoes.get("id_decided_at"),
                "rt_decided_at": decisoes.get("rt_decided_at"),
                **diagnostico,
            })
        ptus = pd.DataFrame(linhas)
        for coluna in COLUNAS_DECISAO:
            ptus[coluna] = pd.to_datetime(ptus[coluna], utc=True)

        capacidade = self.bateria.capacity if self.bateria else 0.0
        tempos = pd.date_range(self.inicio, periods=len(socs), freq=PTU)
        soc_trace = pd.DataFrame({"timestamp": tempos, "soc": socs, "content": socs * capacidade})

        metadata = {
            "label": self.config.label if self.bateria else f"{self.config.label}-noBESS",
            "plant": self.planta.name,
            "plant_capacity_mwp": self.planta.capacity,
            "seed": self.seed,
            "period_start": self.inicio.isoformat(),
            "period_end": self.fim.isoformat(),
            "battery_capacity_mwh": capacidade,
            "unbounded": bool(self.bateria.unbounded) if self.bateria else False,
            "config_digest": self.config_digest or digestConfig({
                "mpc": asdict(self.config),
                "battery": asdict(self.bateria) if self.bateria else None,
                "seed": self.seed,
            }),
        }
        total = float(np.abs(ptus["imbalance"]).sum()) if len(ptus) else 0.0
        logger.info(f"Simulação concluída: {len(ptus)} PTUs, desequilíbrio absoluto {total:.3f} MWh")
        return SimulationResult(ptus, soc_trace, metadata)


def run(agg: AggregationSpec, prices: pd.DataFrame, battery: BatteryParams | None, config: MpcConfig,
        seed: int, period_start: pd.Timestamp, period_end: pd.Timestamp,
        config_digest: str | None = None) -> SimulationResult:
    return SimulatorService(agg, prices, battery, config, seed, period_start, period_end, config_digest).run()
