"""Gerador sintético de PV, previsões por ensemble e preços, determinístico por semente.

PV = perfil de céu claro (sino) × fator sazonal × atenuação beta dirigida por um
latente AR(1) gaussiano, com correlação configurável entre plantas. Membros de
previsão = verdade + ruído autocorrelacionado cujo desvio cresce com o lead time, com um
piso já na primeira PTU. Nenhuma emissão cobre a PTU que começa no próprio instante de emissão.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
import yaml
from scipy import stats

from src.Models.forecastModel import PTU_HORAS, ForecastDistribution, ptuOfDay
from src.Models.simulationModel import PlantSpec
from src.Services.Forecast.forecastStoreService import ForecastStore
from src.Utils.errors import ConfigError
from src.Utils.validators import PTU

logger = logging.getLogger(__name__)

LEAD_MAXIMO = 72
# fração do ruído nominal já presente na primeira PTU após a emissão
ERRO_MINIMO = 0.35
DA_ISSUE_HOUR = 12
FORMATO_TS = "%Y-%m-%dT%H:%M:%SZ"


@dataclass(frozen=True)
class GenerationSpec:
    seed: int = 0
    start: pd.Timestamp = pd.Timestamp("2024-06-01", tz="UTC")
    days: int = 2
    capacities: tuple[float, ...] = (2.7,)
    plant_correlation: float = 0.0
    attenuation: bool = True
    beta_a: float = 5.0
    beta_b: float = 1.5
    ar_coefficient: float = 0.95
    seasonal_amplitude: float = 0.3
    members: int = 50
    forecast_noise: float = 0.15
    noise_autocorrelation: float = 0.8
    horizon_steps: int = 24
    spot_mean: float = 45.0
    spot_reversion: float = 0.1
    spot_volatility: float = 3.0
    spread_pos: float = 10.0
    spread_neg: float = 10.0
    inverted_probability: float = 0.0
    output_dir: str = "data"
    run_config: dict = field(default_factory=dict)

    @property
    def periodStart(self) -> pd.Timestamp:
        # o primeiro dia gerado serve de antecedência
        return self.start + pd.Timedelta(days=1)

    @property
    def end(self) -> pd.Timestamp:
        return self.start + pd.Timedelta(days=self.days)


@dataclass(frozen=True, eq=False)
class GeneratedData:
    spec: GenerationSpec
    prices: pd.DataFrame
    plants: list[PlantSpec]
    clear_sky: np.ndarray


def loadGenerationSpec(caminho: str | Path) -> GenerationSpec:
    caminho = Path(caminho)
    if not caminho.exists():
        raise ConfigError(f"Especificação de dados não encontrada: {caminho}")
    try:
        doc = yaml.safe_load(caminho.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML inválido em {caminho}: {e}") from e
    if not isinstance(doc, dict):
        raise ConfigError(f"{caminho} deve ser um mapeamento YAML")

    plantas = doc.get("plants", {}) or {}
    pv = doc.get("pv", {}) or {}
    previsao = doc.get("forecast", {}) or {}
    precos = doc.get("prices", {}) or {}
    capacidades = plantas.get("capacities_mwp")
    if capacidades is None:
        capacidades = [float(plantas.get("capacity_mwp", 2.7))] * int(plantas.get("n_plants", 1))
    try:
        inicio = pd.Timestamp(str(doc.get("start", "2024-06-01")))
        inicio = inicio.tz_localize("UTC") if inicio.tz is None else inicio.tz_convert("UTC")
        spec = GenerationSpec(
            seed=int(doc.get("seed", 0)),
            start=inicio.normalize(),
            days=int(doc.get("days", 2)),
            capacities=tuple(float(c) for c in capacidades),
            plant_correlation=float(plantas.get("correlation", 0.0)),
            attenuation=bool(pv.get("attenuation", True)),
            beta_a=float(pv.get("beta_a", 5.0)),
            beta_b=float(pv.get("beta_b", 1.5)),
            ar_coefficient=float(pv.get("ar_coefficient", 0.95)),
            seasonal_amplitude=float(pv.get("seasonal_amplitude", 0.3)),
            members=int(previsao.get("members", 50)),
            forecast_noise=float(previsao.get("noise", 0.15)),
            noise_autocorrelation=float(previsao.get("autocorrelation", 0.8)),
            horizon_steps=int(previsao.get("horizon_steps", 24)),
            spot_mean=float(precos.get("spot_mean", 45.0)),
            spot_reversion=float(precos.get("spot_reversion", 0.1)),
            spot_volatility=float(precos.get("spot_volatility", 3.0)),
            spread_pos=float(precos.get("spread_pos", 10.0)),
            spread_neg=float(precos.get("spread_neg", 10.0)),
            inverted_probability=float(precos.get("inverted_probability", 0.0)),
            run_config=doc.get("run_config", {}) or {},
            output_dir=str(doc.get("output_dir", "data")),
        )
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Especificação de dados inválida: {e}") from e
    validarSpec(spec)
    return spec


def validarSpec(spec: GenerationSpec):
    if spec.days < 2:
        raise ConfigError("days deve ser >= 2 (um dia de antecedência + período)")
    if not spec.capacities or min(spec.capacities) <= 0:
        raise ConfigError("Capacidades das plantas devem ser > 0")
    if not 0.0 <= spec.plant_correlation <= 1.0:
        raise ConfigError("plants.correlation deve estar em [0, 1]")
    if not 0.0 <= spec.inverted_probability <= 1.0:
        raise ConfigError("prices.inverted_probability deve estar em [0, 1]")
    if spec.members < 1 or spec.horizon_steps < 1:
        raise ConfigError("forecast.members e forecast.horizon_steps devem ser >= 1")
    if spec.forecast_noise < 0:
        raise ConfigError("forecast.noise não pode ser negativo")


def clearSkyProfile(tempos: pd.DatetimeIndex, amplitude_sazonal: float) -> np.ndarray:
    """Fração da capacidade em cada PTU: sino entre o nascer e o pôr do sol × fator sazonal."""
    hora = tempos.hour.to_numpy() + tempos.minute.to_numpy() / 60.0 + 0.25
    sazonal = np.cos(2 * np.pi * (tempos.dayofyear.to_numpy() - 172) / 365.0)
    duracao = 12.0 + 4.0 * sazonal
    nascer = 12.0 - duracao / 2.0
    fase = np.clip((hora - nascer) / duracao, 0.0, 1.0)
    sino = np.sin(np.pi * fase) ** 2
    fator = 1.0 - amplitude_sazonal * (1.0 - sazonal) / 2.0
    return sino * fator


def _latentes(rng, n_ptus: int, n_plantas: int, phi: float, rho: float) -> np.ndarray:
    comum = rng.standard_normal(n_ptus)
    proprio = rng.standard_normal((n_ptus, n_plantas))
    choques = np.sqrt(rho) * comum[:, None] + np.sqrt(1.0 - rho) * proprio
    z = np.empty_like(choques)
    z[0] = choques[0]
    escala = np.sqrt(1.0 - phi ** 2)
    for t in range(1, n_ptus):
        z[t] = phi * z[t - 1] + escala * choques[t]
    return z


def generatePv(spec: GenerationSpec, rng) -> tuple[pd.DatetimeIndex, np.ndarray, np.ndarray]:
    tempos = pd.date_range(spec.start, spec.end, freq=PTU, inclusive="left")
    claro = clearSkyProfile(tempos, spec.seasonal_amplitude)
    n_plantas = len(spec.capacities)
    if spec.attenuation:
        z = _latentes(rng, len(tempos), n_plantas, spec.ar_coefficient, spec.plant_correlation)
        atenuacao = stats.beta.ppf(stats.norm.cdf(z), spec.beta_a, spec.beta_b)
    else:
        atenuacao = np.ones((len(tempos), n_plantas))
    limites = np.array(spec.capacities) * PTU_HORAS
    pv = np.clip(claro[:, None] * atenuacao * limites[None, :], 0.0, limites[None, :])
    return tempos, claro, pv


def _desvioPorLead(spec: GenerationSpec, leads: np.ndarray) -> np.ndarray:
    crescimento = np.sqrt(np.minimum(leads, LEAD_MAXIMO) / LEAD_MAXIMO)
    return spec.forecast_noise * np.maximum(crescimento, ERRO_MINIMO)


def _membros(spec: GenerationSpec, rng, verdade: np.ndarray, claro: np.ndarray, leads: np.ndarray, limite: float) -> np.ndarray:
    """Membros (membros x alvos) para uma emissão; ruído AR(1) ao longo dos alvos."""
    choques = rng.standard_normal((spec.members, leads.size))
    ruido = np.empty_like(choques)
    ruido[:, 0] = choques[:, 0]
    psi = spec.noise_autocorrelation
    for j in range(1, leads.size):
        ruido[:, j] = psi * ruido[:, j - 1] + np.sqrt(1.0 - psi ** 2) * choques[:, j]
    escala = _desvioPorLead(spec, leads) * claro * limite
    return np.clip(verdade[None, :] + escala[None, :] * ruido, 0.0, limite)


def generateForecasts(spec: GenerationSpec, rng, tempos: pd.DatetimeIndex, claro: np.ndarray,
                      verdade: np.ndarray, capacidade: float) -> ForecastStore:
    limite = capacidade * PTU_HORAS
    store = ForecastStore(capacidade)
    n = len(tempos)
    for i, emissao in enumerate(tempos):
        # emissão por PTU: leads 1..H, alvos a partir da PTU seguinte
        fim = min(n, i + spec.horizon_steps + 1)
        if i + 1 < fim:
            leads = np.arange(1, fim - i)
            membros = _membros(spec, rng, verdade[i + 1:fim], claro[i + 1:fim], leads, limite)
            for j, k in enumerate(leads):
                store.add(emissao, tempos[i + k], ForecastDistribution.fromSamples(membros[:, j], capacidade, ptuOfDay(tempos[i + k])))
        if emissao.hour == DA_ISSUE_HOUR and emissao.minute == 0:
            # emissão day-ahead do meio-dia para o dia seguinte inteiro
            inicio = i + 24
            fim = min(n, inicio + 48)
            if inicio >= n:
                continue
            leads = np.arange(inicio, fim) - i
            membros = _membros(spec, rng, verdade[inicio:fim], claro[inicio:fim], leads, limite)
            for j, k in enumerate(leads):
                store.add(emissao, tempos[i + k], ForecastDistribution.fromSamples(membros[:, j], capacidade, ptuOfDay(tempos[i + k])))
    return store


def generatePrices(spec: GenerationSpec, rng, tempos: pd.DatetimeIndex) -> pd.DataFrame:
    n = len(tempos)
    spot = np.empty(n)
    spot[0] = spec.spot_mean
    choques = rng.standard_normal(n)
    for t in range(1, n):
        spot[t] = spot[t - 1] + spec.spot_reversion * (spec.spot_mean - spot[t - 1]) + spec.spot_volatility * choques[t]
    a = spec.spread_pos * rng.gamma(2.0, 0.5, n)
    b = spec.spread_neg * rng.gamma(2.0, 0.5, n)
    invertido = rng.random(n) < spec.inverted_probability
    positivo = np.where(invertido, spot + a, spot - a)
    negativo = np.where(invertido, spot - b, spot + b)
    return pd.DataFrame(
        {"spot": spot, "pos_imbalance_price": positivo, "neg_imbalance_price": negativo},
        index=pd.DatetimeIndex(tempos, name="timestamp"),
    )


def generate(spec: GenerationSpec) -> GeneratedData:
    validarSpec(spec)
    rng = np.random.default_rng(spec.seed)
    tempos, claro, pv = generatePv(spec, rng)
    plantas = []
    for j, capacidade in enumerate(spec.capacities):
        store = generateForecasts(spec, rng, tempos, claro, pv[:, j], capacidade)
        serie = pd.Series(pv[:, j], index=tempos, name="pv")
        plantas.append(PlantSpec(f"plant{j + 1}", capacidade, serie, store))
    precos = generatePrices(spec, rng, tempos)
    logger.info(f"Dados sintéticos: {len(plantas)} planta(s), {len(tempos)} PTUs com o dia de antecedência")
    return GeneratedData(spec, precos, plantas, claro)


def _comTimestamps(df: pd.DataFrame, colunas: list[str]) -> pd.DataFrame:
    df = df.copy()
    for coluna in colunas:
        df[coluna] = pd.DatetimeIndex(df[coluna]).strftime(FORMATO_TS)
    return df


def writeGenerated(dados: GeneratedData, pasta: str | Path) -> dict[str, Path]:
    pasta = Path(pasta)
    pasta.mkdir(parents=True, exist_ok=True)
    arquivos = {}

    precos = _comTimestamps(dados.prices.reset_index(), ["timestamp"])
    arquivos["prices"] = pasta / "prices.csv"
    precos.to_csv(arquivos["prices"], index=False)

    plantas_cfg = []
    for planta in dados.plants:
        pv = _comTimestamps(planta.pv_series.rename("pv").rename_axis("timestamp").reset_index(), ["timestamp"])
        caminho_pv = pasta / f"{planta.name}_pv.csv"
        pv.to_csv(caminho_pv, index=False)
        caminho_previsao = pasta / f"{planta.name}_forecast.csv"
        _comTimestamps(planta.forecast_store.toFrame(), ["issue_time", "target_time"]).to_csv(caminho_previsao, index=False)
        arquivos[f"{planta.name}_pv"] = caminho_pv
        arquivos[f"{planta.name}_forecast"] = caminho_previsao
        plantas_cfg.append({
            "name": planta.name,
            "capacity_mwp": planta.capacity,
            "pv_file": caminho_pv.name,
            "forecast_file": caminho_previsao.name,
        })

    spec = dados.spec
    documento = {
        "period": {"start": spec.periodStart.strftime("%Y-%m-%d"), "end": spec.end.strftime("%Y-%m-%d")},
        "plants": plantas_cfg,
        "prices_file": "prices.csv",
        "battery": {"capacity_mwh_per_mwp": 1.0, "eta_ch": 0.95, "eta_dis": 0.95,
                    "replacement_cost": 0.0, "n100": 5000, "woehler_exponent": 1.1, "initial_soc": 0.5},
        "mpc": {"objective": "ImbalanceMin", "mode": "Stochastic", "use_intraday": True,
                "horizon_steps": spec.horizon_steps, "n_scenarios": 20},
        "sizing": {"curve_capacities": [0.25, 0.5, 1.0], "revenue_capacity_mwh_per_mwp": 1.0},
        "seed": spec.seed,
        "output_dir": "output",
    }
    for secao, valores in spec.run_config.items():
        if isinstance(valores, dict) and isinstance(documento.get(secao), dict):
            documento[secao].update(valores)
        else:
            documento[secao] = valores
    arquivos["config"] = pasta / "config.yaml"
    arquivos["config"].write_text(yaml.safe_dump(documento, sort_keys=False), encoding="utf-8")
    logger.info(f"Arquivos sintéticos gravados em {pasta}")
    return arquivos
