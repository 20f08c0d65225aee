class PvBessError(Exception):
    """Base de todos os erros do simulador."""
    exitCode = 1


class ConfigError(PvBessError):
    exitCode = 2


class DataError(PvBessError):
    exitCode = 3

    def __init__(self, mensagem: str, arquivo: str | None = None, linha: int | None = None, coluna: str | None = None):
        self.arquivo = arquivo
        self.linha = linha
        self.coluna = coluna
        contexto = []
        if arquivo is not None:
            contexto.append(f"arquivo={arquivo}")
        if linha is not None:
            contexto.append(f"linha={linha}")
        if coluna is not None:
            contexto.append(f"coluna={coluna}")
        if contexto:
            mensagem = f"{mensagem} ({', '.join(contexto)})"
        super().__init__(mensagem)


class ForecastError(DataError):
    pass


class SolverError(PvBessError):
    exitCode = 4


class ConstraintViolationError(PvBessError):
    exitCode = 3

    def __init__(self, mensagem: str, bound: str):
        self.bound = bound
        super().__init__(f"{mensagem} [bound violado: {bound}]")


class GateClosedError(PvBessError):
    pass


class CausalityError(PvBessError):
    pass


class DomainError(PvBessError, ValueError):
    pass
