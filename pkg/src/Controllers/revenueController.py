import logging
from dataclasses import asdict

from src.Config.runConfig import loadRunConfig
from src.Services.Exportar.reportExportService import ESTUDO_RECEITA, ReportService, StudyRepository
from src.Services.Ingestion.studyService import StudyLoader
from src.Services.Sizing.sizingService import SizingService
from src.Utils.errors import PvBessError

logger = logging.getLogger(__name__)


class RevenueController:

    @staticmethod
    def estudarReceita(config_path: str, seed: int | None = None, output: str | None = None,
                       debug_lp: str | None = None) -> dict:
        try:
            cfg = loadRunConfig(config_path, seed=seed, output=output, debug_lp=debug_lp)
            service = SizingService(StudyLoader().load(cfg), cfg.battery, cfg.mpc)
            relatorios, resultados = service.revenueStudy(cfg.sizing.revenue_capacity_mwh_per_mwp)
            StudyRepository().save(ESTUDO_RECEITA, resultados, cfg.output_dir, cfg.totalCapacityMwp)
            arquivos = ReportService(cfg.output_dir).render()
            return {
                "status": "ok",
                "mensagem": "Estudo de receita concluído: " + "; ".join(
                    f"{r.strategy}: {r.revenue_delta:+.2f}%" for r in relatorios
                ),
                "codigo": 0,
                "caminho": str(cfg.output_dir),
                "tabela": [asdict(r) for r in relatorios],
                "arquivos": {k: str(v) for k, v in arquivos.items()},
            }
        except PvBessError as e:
            logger.error(f"Erro no estudo de receita: {e}")
            return {"status": "erro", "mensagem": str(e), "codigo": e.exitCode}
        except Exception as e:
            logger.exception("Erro inesperado no estudo de receita")
            return {"status": "erro", "mensagem": f"Erro inesperado: {e}", "codigo": 1}
