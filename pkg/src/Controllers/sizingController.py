import logging
from dataclasses import asdict

from src.Config.runConfig import loadRunConfig
from src.Services.Exportar.reportExportService import ESTUDO_SIZING, ReportService, StudyRepository
from src.Services.Ingestion.studyService import StudyLoader
from src.Services.Sizing.sizingService import SizingService
from src.Utils.errors import PvBessError

logger = logging.getLogger(__name__)


class SizingController:

    @staticmethod
    def dimensionar(config_path: str, seed: int | None = None, output: str | None = None,
                    debug_lp: str | None = None) -> dict:
        try:
            cfg = loadRunConfig(config_path, seed=seed, output=output, debug_lp=debug_lp)
            service = SizingService(StudyLoader().load(cfg), cfg.battery, cfg.mpc)
            relatorios, resultados = service.sizingStudy()
            StudyRepository().save(ESTUDO_SIZING, resultados, cfg.output_dir, cfg.totalCapacityMwp)

            if cfg.sizing.curve_capacities:
                curva = service.capacitySweep(list(cfg.sizing.curve_capacities))
                curva.to_csv(cfg.output_dir / "capacity_curve.csv", index=False, lineterminator="\n")
                logger.info(f"Curva por capacidade com {len(curva)} pontos")

            arquivos = ReportService(cfg.output_dir).render()
            return {
                "status": "ok",
                "mensagem": "Dimensionamento concluído: " + "; ".join(
                    f"{r.strategy}: {r.required_capacity_mwh_per_mwp:.3f} MWh/MWp" for r in relatorios
                ),
                "codigo": 0,
                "caminho": str(cfg.output_dir),
                "tabela": [asdict(r) for r in relatorios],
                "arquivos": {k: str(v) for k, v in arquivos.items()},
            }
        except PvBessError as e:
            logger.error(f"Erro no dimensionamento: {e}")
            return {"status": "erro", "mensagem": str(e), "codigo": e.exitCode}
        except Exception as e:
            logger.exception("Erro inesperado no dimensionamento")
            return {"status": "erro", "mensagem": f"Erro inesperado: {e}", "codigo": 1}
