import numpy as np
import pandas as pd
import pytest

from src.Models.batteryModel import BatteryParams
from src.Models.controlModel import MpcConfig
from src.Models.simulationModel import AggregationSpec, SimulationResult
from src.Services.Simulation.simulatorService import SimulatorService
from src.Services.Synthetic.syntheticService import GenerationSpec, generate

INICIO_DADOS = pd.Timestamp("2024-06-01", tz="UTC")


def specSintetico(**kwargs) -> GenerationSpec:
    base = dict(seed=3, start=INICIO_DADOS, days=3, members=10, horizon_steps=6, forecast_noise=0.15)
    base.update(kwargs)
    return GenerationSpec(**base)


def simular(dados, bateria: BatteryParams | None, config: MpcConfig, seed: int = 0, fim=None) -> SimulationResult:
    spec = dados.spec
    return SimulatorService(
        AggregationSpec(dados.plants), dados.prices, bateria, config, seed,
        spec.periodStart, fim or spec.end,
    ).run()


def precosConstantes(inicio, fim, spot=40.0, pos=30.0, neg=60.0) -> pd.DataFrame:
    indice = pd.date_range(inicio, fim, freq="30min", inclusive="left", name="timestamp")
    n = len(indice)
    return pd.DataFrame(
        {"spot": np.full(n, spot), "pos_imbalance_price": np.full(n, pos), "neg_imbalance_price": np.full(n, neg)},
        index=indice,
    )


@pytest.fixture(scope="session")
def dados_dois_dias():
    return generate(specSintetico())


@pytest.fixture(scope="session")
def dados_perfeitos():
    return generate(specSintetico(forecast_noise=0.0))


@pytest.fixture
def bateria():
    return BatteryParams(capacity=1.35, charge_efficiency=0.95, discharge_efficiency=0.95, initial_soc=0.5)


@pytest.fixture
def mpc_rapido():
    return MpcConfig(horizon_steps=4, n_scenarios=5)
