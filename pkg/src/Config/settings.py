import logging
import os

from dotenv import load_dotenv

from src.Utils.errors import ConfigError
from src.Utils.path import resourcePath

env_path = resourcePath(".env")

if os.path.exists(env_path):
    load_dotenv(dotenv_path=env_path, override=False)

LOG_LEVEL = os.getenv("PVBESS_LOG_LEVEL", "INFO")
OUTPUT_ROOT = os.getenv("PVBESS_OUTPUT_ROOT", "")

FORMATO_LOG = "[%(levelname)s] %(name)s: %(message)s"


def workers() -> int:
    valor = os.getenv("PVBESS_WORKERS", "4")
    try:
        n = int(valor)
    except ValueError:
        raise ConfigError(f"PVBESS_WORKERS deve ser um inteiro: {valor!r}") from None
    if n < 1:
        raise ConfigError(f"PVBESS_WORKERS deve ser >= 1: {n}")
    return n


def configureLogging(nivel: str | None = None):
    nivel = (nivel or LOG_LEVEL).upper()
    raiz = logging.getLogger()
    if not raiz.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(FORMATO_LOG))
        raiz.addHandler(handler)
    raiz.setLevel(getattr(logging, nivel, logging.INFO))
    logging.getLogger(__name__).debug(f".env procurado em {env_path}")
