import logging

from src.Services.Exportar.reportExportService import ReportService
from src.Utils.errors import PvBessError

logger = logging.getLogger(__name__)


class ReportController:

    @staticmethod
    def gerarRelatorio(result_dir: str, output: str | None = None) -> dict:
        try:
            arquivos = ReportService(result_dir, output).render()
            return {
                "status": "ok",
                "mensagem": f"Relatório com {len(arquivos)} arquivos gerado",
                "codigo": 0,
                "arquivos": {k: str(v) for k, v in arquivos.items()},
            }
        except PvBessError as e:
            logger.error(f"Erro ao gerar relatório: {e}")
            return {"status": "erro", "mensagem": str(e), "codigo": e.exitCode}
        except Exception as e:
            logger.exception("Erro inesperado ao gerar relatório")
            return {"status": "erro", "mensagem": f"Erro inesperado: {e}", "codigo": 1}
