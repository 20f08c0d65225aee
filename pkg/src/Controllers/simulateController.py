import logging
from dataclasses import asdict

from src.Config.runConfig import loadRunConfig
from src.Services.Exportar.resultExportService import saveResult
from src.Services.Ingestion.studyService import StudyLoader
from src.Services.Simulation.settleService import settle
from src.Services.Simulation.simulatorService import SimulatorService
from src.Utils.errors import PvBessError

logger = logging.getLogger(__name__)


class SimulateController:

    @staticmethod
    def simular(config_path: str, seed: int | None = None, output: str | None = None,
                strategy: str | None = None, debug_lp: str | None = None) -> dict:
        try:
            cfg = loadRunConfig(config_path, seed=seed, output=output, strategy=strategy, debug_lp=debug_lp)
            entrada = StudyLoader().load(cfg)
            resultado = SimulatorService(
                entrada.agg, entrada.prices, cfg.battery, cfg.mpc, cfg.seed,
                cfg.period_start, cfg.period_end, cfg.digest,
            ).run()
            saveResult(resultado, cfg.output_dir)
            totais = settle(resultado)
            return {
                "status": "ok",
                "mensagem": f"Simulação '{resultado.label}' concluída: receita {totais.revenue:.2f} EUR, "
                            f"desequilíbrio absoluto {totais.absolute_imbalance:.3f} MWh",
                "codigo": 0,
                "caminho": str(cfg.output_dir),
                "digest": resultado.digest(),
                "resumo": asdict(totais),
            }
        except PvBessError as e:
            logger.error(f"Erro na simulação: {e}")
            return {"status": "erro", "mensagem": str(e), "codigo": e.exitCode}
        except Exception as e:
            logger.exception("Erro inesperado na simulação")
            return {"status": "erro", "mensagem": f"Erro inesperado: {e}", "codigo": 1}
