import os
import sys
from pathlib import Path


def resourcePath(relative_path: str) -> str:
    try:
        base_path = sys._MEIPASS
    except AttributeError:
        base_path = os.path.abspath(".")

    return os.path.join(base_path, relative_path)


def resolverCaminho(caminho: str | os.PathLike, base: str | os.PathLike) -> Path:
    """Caminhos relativos do arquivo de configuração valem a partir do diretório dele."""
    p = Path(caminho)
    if p.is_absolute():
        return p
    return (Path(base) / p).resolve()
