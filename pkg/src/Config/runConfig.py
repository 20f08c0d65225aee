"""Configuração de uma rodada: documento YAML validado em dataclasses imutáveis."""
import copy
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd
import yaml

from src.Config import settings
from src.Models.batteryModel import BatteryParams
from src.Models.controlModel import Mode, MpcConfig, Objective
from src.Utils.conversion import Conversor
from src.Utils.digest import digestConfig
from src.Utils.errors import ConfigError, DataError, DomainError
from src.Utils.path import resolverCaminho

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlantConfig:
    name: str
    capacity_mwp: float
    pv_file: Path
    forecast_file: Path


@dataclass(frozen=True)
class SizingConfig:
    curve_capacities: tuple[float, ...] = ()
    revenue_capacity_mwh_per_mwp: float = 1.0


@dataclass(frozen=True)
class RunConfig:
    source: Path
    period_start: pd.Timestamp
    period_end: pd.Timestamp
    plants: tuple[PlantConfig, ...]
    prices_file: Path
    battery: BatteryParams
    mpc: MpcConfig
    seed: int
    output_dir: Path
    aggregate_forecast_file: Path | None = None
    cross_plant_correlation: tuple | None = None
    aggregate_members: int = 100
    sizing: SizingConfig = field(default_factory=SizingConfig)
    document: dict = field(default_factory=dict, repr=False)

    @property
    def digest(self) -> str:
        # destino da saída não altera resultados
        return digestConfig({k: v for k, v in self.document.items() if k != "output_dir"})

    @property
    def totalCapacityMwp(self) -> float:
        return sum(p.capacity_mwp for p in self.plants)


def _secao(documento: dict, nome: str, obrigatoria: bool = True) -> dict:
    valor = documento.get(nome)
    if valor is None:
        if obrigatoria:
            raise ConfigError(f"Seção '{nome}' ausente na configuração")
        return {}
    if not isinstance(valor, dict):
        raise ConfigError(f"Seção '{nome}' deve ser um mapeamento")
    return valor


def _numero(secao: dict, chave: str, padrao=None, contexto: str = "") -> float:
    if chave not in secao or secao[chave] is None:
        if padrao is None:
            raise ConfigError(f"Campo obrigatório '{contexto}{chave}' ausente")
        return padrao
    try:
        return Conversor(secao[chave], None, None, f"{contexto}{chave}")
    except DataError as e:
        raise ConfigError(str(e)) from e


def _arquivo(valor, base: Path, campo: str) -> Path:
    if not valor:
        raise ConfigError(f"Campo '{campo}' ausente")
    caminho = resolverCaminho(valor, base)
    if not caminho.exists():
        raise ConfigError(f"Arquivo de '{campo}' não encontrado: {caminho}")
    return caminho


def _instante(valor, campo: str) -> pd.Timestamp:
    try:
        ts = pd.Timestamp(str(valor))
    except ValueError as e:
        raise ConfigError(f"Data inválida em '{campo}': {valor!r}") from e
    if ts.tz is None:
        ts = ts.tz_localize("UTC")
    elif str(ts.tz) != "UTC":
        raise ConfigError(f"'{campo}' deve estar em UTC: {valor!r}")
    if ts != ts.normalize():
        raise ConfigError(f"'{campo}' deve cair à meia-noite UTC: {valor!r}")
    return ts


def parseStrategy(rotulo: str) -> dict:
    """'RevenueMax-ID-stochastic' → campos de mpc; o mesmo formato de MpcConfig.label."""
    partes = rotulo.split("-")
    if len(partes) != 3:
        raise ConfigError(f"Estratégia inválida '{rotulo}'; use <objetivo>-<ID|noID>-<stochastic|deterministic>")
    objetivo, intraday, modo = partes
    try:
        Objective(objetivo)
    except ValueError:
        raise ConfigError(f"Objetivo desconhecido: {objetivo}") from None
    if intraday not in ("ID", "noID") or modo not in ("stochastic", "deterministic"):
        raise ConfigError(f"Estratégia inválida '{rotulo}'")
    return {"objective": objetivo, "use_intraday": intraday == "ID", "mode": modo.capitalize()}


def _bateria(secao: dict, capacidade_total: float) -> BatteryParams:
    if "capacity_mwh" in secao:
        capacidade = _numero(secao, "capacity_mwh", contexto="battery.")
    else:
        capacidade = _numero(secao, "capacity_mwh_per_mwp", 1.0, "battery.") * capacidade_total
    limite = secao.get("power_limit_mwh_per_ptu")
    try:
        return BatteryParams(
            capacity=capacidade,
            charge_efficiency=_numero(secao, "eta_ch", 0.95, "battery."),
            discharge_efficiency=_numero(secao, "eta_dis", 0.95, "battery."),
            power_limit=math.inf if limite is None else _numero(secao, "power_limit_mwh_per_ptu", contexto="battery."),
            replacement_cost=_numero(secao, "replacement_cost", 0.0, "battery."),
            cycles_at_full_depth=_numero(secao, "n100", 5000.0, "battery."),
            woehler_exponent=_numero(secao, "woehler_exponent", 1.1, "battery."),
            initial_soc=_numero(secao, "initial_soc", 0.5, "battery."),
        )
    except DomainError as e:
        raise ConfigError(f"Bateria inválida: {e}") from e


def _mpc(secao: dict, debug_lp: str | None) -> MpcConfig:
    copula = secao.get("copula") or {}
    if isinstance(copula, str):
        copula = {"method": copula}
    try:
        return MpcConfig(
            horizon_steps=int(_numero(secao, "horizon_steps", 24, "mpc.")),
            n_scenarios=int(_numero(secao, "n_scenarios", 100, "mpc.")),
            objective=Objective(secao.get("objective", Objective.IMBALANCE_MIN.value)),
            mode=Mode(str(secao.get("mode", Mode.STOCHASTIC.value)).capitalize()),
            use_intraday=bool(secao.get("use_intraday", True)),
            copula_method=str(copula.get("method", "exponential")),
            copula_decay=_numero(copula, "decay", 0.9, "mpc.copula."),
            debug_lp_dir=debug_lp,
        )
    except (DomainError, ValueError) as e:
        raise ConfigError(f"Seção mpc inválida: {e}") from e


def loadRunConfig(caminho: str | Path, seed: int | None = None, output: str | None = None,
                  strategy: str | None = None, debug_lp: str | None = None) -> RunConfig:
    caminho = Path(caminho)
    if not caminho.exists():
        raise ConfigError(f"Arquivo de configuração não encontrado: {caminho}")
    try:
        documento = yaml.safe_load(caminho.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML inválido em {caminho}: {e}") from e
    if not isinstance(documento, dict):
        raise ConfigError(f"A configuração {caminho} deve ser um mapeamento YAML")

    documento = copy.deepcopy(documento)
    if seed is not None:
        documento["seed"] = int(seed)
    if output is not None:
        documento["output_dir"] = str(Path(output).resolve())
    if strategy is not None:
        documento.setdefault("mpc", {}).update(parseStrategy(strategy))

    base = caminho.parent
    periodo = _secao(documento, "period")
    inicio = _instante(periodo.get("start"), "period.start")
    fim = _instante(periodo.get("end"), "period.end")
    if fim <= inicio:
        raise ConfigError(f"Período vazio: {inicio} a {fim}")

    plantas_doc = documento.get("plants")
    if not plantas_doc or not isinstance(plantas_doc, list):
        raise ConfigError("Seção 'plants' deve listar pelo menos uma planta")
    plantas = []
    for i, p in enumerate(plantas_doc):
        contexto = f"plants[{i}]."
        if not isinstance(p, dict):
            raise ConfigError(f"{contexto[:-1]} deve ser um mapeamento")
        plantas.append(PlantConfig(
            name=str(p.get("name", f"plant{i + 1}")),
            capacity_mwp=_numero(p, "capacity_mwp", contexto=contexto),
            pv_file=_arquivo(p.get("pv_file"), base, contexto + "pv_file"),
            forecast_file=_arquivo(p.get("forecast_file"), base, contexto + "forecast_file"),
        ))
    capacidade_total = sum(p.capacity_mwp for p in plantas)

    agregado = documento.get("aggregate_forecast_file")
    correlacao = documento.get("cross_plant_correlation")
    sizing_doc = _secao(documento, "sizing", obrigatoria=False)
    config = RunConfig(
        source=caminho.resolve(),
        period_start=inicio,
        period_end=fim,
        plants=tuple(plantas),
        prices_file=_arquivo(documento.get("prices_file"), base, "prices_file"),
        battery=_bateria(_secao(documento, "battery", obrigatoria=False), capacidade_total),
        mpc=_mpc(_secao(documento, "mpc", obrigatoria=False), debug_lp),
        seed=int(_numero(documento, "seed", 0)),
        output_dir=resolverCaminho(documento.get("output_dir", "output"), settings.OUTPUT_ROOT or base),
        aggregate_forecast_file=_arquivo(agregado, base, "aggregate_forecast_file") if agregado else None,
        cross_plant_correlation=tuple(tuple(float(v) for v in linha) for linha in correlacao) if correlacao else None,
        aggregate_members=int(_numero(documento, "aggregate_members", 100)),
        sizing=SizingConfig(
            curve_capacities=tuple(float(c) for c in sizing_doc.get("curve_capacities", ())),
            revenue_capacity_mwh_per_mwp=_numero(sizing_doc, "revenue_capacity_mwh_per_mwp", 1.0, "sizing."),
        ),
        document=documento,
    )
    logger.info(f"Configuração {caminho.name} carregada (digest {config.digest[:12]})")
    return config
