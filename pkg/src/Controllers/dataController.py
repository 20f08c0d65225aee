import logging
from dataclasses import replace
from pathlib import Path

from src.Services.Synthetic.syntheticService import generate, loadGenerationSpec, writeGenerated
from src.Utils.errors import PvBessError
from src.Utils.path import resolverCaminho

logger = logging.getLogger(__name__)


class DataController:

    @staticmethod
    def gerarDados(spec_path: str, seed: int | None = None, output: str | None = None) -> dict:
        try:
            spec = loadGenerationSpec(spec_path)
            if seed is not None:
                spec = replace(spec, seed=int(seed))
            pasta = Path(output).resolve() if output else resolverCaminho(spec.output_dir, Path(spec_path).parent)
            arquivos = writeGenerated(generate(spec), pasta)
            return {
                "status": "ok",
                "mensagem": f"{len(arquivos)} arquivos sintéticos gravados em {pasta}",
                "codigo": 0,
                "caminho": str(pasta),
                "arquivos": {k: str(v) for k, v in arquivos.items()},
            }
        except PvBessError as e:
            logger.error(f"Erro ao gerar dados: {e}")
            return {"status": "erro", "mensagem": str(e), "codigo": e.exitCode}
        except Exception as e:
            logger.exception("Erro inesperado ao gerar dados")
            return {"status": "erro", "mensagem": f"Erro inesperado: {e}", "codigo": 1}
