import logging

import numpy as np

from src.Config.runConfig import RunConfig
from src.Models.forecastModel import CopulaSpec
from src.Models.simulationModel import AggregationSpec, PlantSpec
from src.Models.sizingModel import StudyInputs
from src.Services.Ingestion.ingestionService import ForecastRepository, PriceRepository, PvRepository
from src.Utils.errors import ConfigError, DomainError

logger = logging.getLogger(__name__)


class StudyLoader:
    def __init__(self, precos: PriceRepository | None = None, pv: PvRepository | None = None,
                 previsoes: ForecastRepository | None = None):
        self.precos = precos or PriceRepository()
        self.pv = pv or PvRepository()
        self.previsoes = previsoes or ForecastRepository()

    def aggregation(self, cfg: RunConfig) -> AggregationSpec:
        plantas = [
            PlantSpec(p.name, p.capacity_mwp, self.pv.load(p.pv_file, p.capacity_mwp),
                      self.previsoes.load(p.forecast_file, p.capacity_mwp))
            for p in cfg.plants
        ]
        copula = None
        if cfg.cross_plant_correlation is not None:
            try:
                copula = CopulaSpec(np.array(cfg.cross_plant_correlation, dtype=float))
            except DomainError as e:
                raise ConfigError(f"cross_plant_correlation inválida: {e}") from e
        agregado = None
        if cfg.aggregate_forecast_file is not None and len(plantas) > 1:
            agregado = self.previsoes.load(cfg.aggregate_forecast_file, cfg.totalCapacityMwp)
        return AggregationSpec(plantas, copula, agregado, cfg.aggregate_members)

    def load(self, cfg: RunConfig) -> StudyInputs:
        agg = self.aggregation(cfg)
        precos = self.precos.load(cfg.prices_file)
        logger.info(f"Estudo com {len(agg.plants)} planta(s), {cfg.totalCapacityMwp:.2f} MWp")
        return StudyInputs(agg, precos, cfg.period_start, cfg.period_end, cfg.seed, cfg.digest)
