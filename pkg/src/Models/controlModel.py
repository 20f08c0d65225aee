from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd

from src.Utils.errors import DomainError, GateClosedError

DAY_AHEAD_LEAD = pd.Timedelta(hours=12)
INTRADAY_LEAD = pd.Timedelta(minutes=30)


class Objective(str, Enum):
    IMBALANCE_MIN = "ImbalanceMin"
    REVENUE_MAX = "RevenueMax"


class Mode(str, Enum):
    STOCHASTIC = "Stochastic"
    DETERMINISTIC = "Deterministic"


@dataclass(frozen=True)
class MpcConfig:
    horizon_steps: int = 24
    n_scenarios: int = 100
    objective: Objective = Objective.IMBALANCE_MIN
    mode: Mode = Mode.STOCHASTIC
    use_intraday: bool = True
    copula_method: str = "exponential"
    copula_decay: float = 0.9
    debug_lp_dir: str | None = None

    def __post_init__(self):
        if self.horizon_steps < 1:
            raise DomainError("horizon_steps deve ser >= 1")
        if self.n_scenarios < 1:
            raise DomainError("n_scenarios deve ser >= 1")
        if self.copula_method not in ("exponential", "fitted", "identity"):
            raise DomainError(f"copula_method desconhecido: {self.copula_method}")
        object.__setattr__(self, "objective", Objective(self.objective))
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def effectiveScenarios(self) -> int:
        return 1 if self.mode is Mode.DETERMINISTIC else self.n_scenarios

    @property
    def label(self) -> str:
        intraday = "ID" if self.use_intraday else "noID"
        modo = "stochastic" if self.mode is Mode.STOCHASTIC else "deterministic"
        return f"{self.objective.value}-{intraday}-{modo}"


class DecisionSet:
    """Decisões por PTU: lances day-ahead (parcelas PV e bateria), lance intra-day e comando da bateria.

    Cada decisão é gravada uma única vez, com o instante em que foi tomada, e respeita o gate
    do seu mercado: day-ahead até 12:00 da véspera, intra-day até 30 min antes da entrega,
    comando até o início da entrega.
    """

    def __init__(self):
        self.day_ahead_pv_bids: dict[pd.Timestamp, float] = {}
        self.day_ahead_bess_bids: dict[pd.Timestamp, float] = {}
        self.intraday_bids: dict[pd.Timestamp, float] = {}
        self.bess_commands: dict[pd.Timestamp, float] = {}
        self._instantes: dict[pd.Timestamp, dict[str, pd.Timestamp]] = {}

    def _registrar(self, alvo: pd.Timestamp, etapa: str, now: pd.Timestamp, gate: pd.Timestamp):
        instantes = self._instantes.setdefault(alvo, {})
        if etapa in instantes:
            raise GateClosedError(f"Decisão {etapa} da PTU {alvo} já foi fixada em {instantes[etapa]}")
        if now > gate:
            raise GateClosedError(f"Gate {etapa} da PTU {alvo} fechou em {gate} (agora {now})")
        instantes[etapa] = now

    def fixDayAhead(self, alvo: pd.Timestamp, pv_bid: float, bess_bid: float, now: pd.Timestamp):
        self._registrar(alvo, "da_decided_at", now, alvo.normalize() - DAY_AHEAD_LEAD)
        self.day_ahead_pv_bids[alvo] = float(pv_bid)
        self.day_ahead_bess_bids[alvo] = float(bess_bid)

    def fixIntraday(self, alvo: pd.Timestamp, energia: float, now: pd.Timestamp):
        self._registrar(alvo, "id_decided_at", now, alvo - INTRADAY_LEAD)
        self.intraday_bids[alvo] = float(energia)

    def fixCommand(self, alvo: pd.Timestamp, comando: float, now: pd.Timestamp):
        self._registrar(alvo, "rt_decided_at", now, alvo)
        self.bess_commands[alvo] = float(comando)

    def dayAheadBid(self, alvo: pd.Timestamp) -> float:
        return self.day_ahead_pv_bids[alvo] + self.day_ahead_bess_bids[alvo]

    def decisionTimes(self, alvo: pd.Timestamp) -> dict[str, pd.Timestamp]:
        return dict(self._instantes.get(alvo, {}))


@dataclass(frozen=True)
class RealtimePlan:
    commands: np.ndarray
    expected_objective: float
    content_plan: np.ndarray

    @property
    def firstCommand(self) -> float:
        return float(self.commands[0])


class LpStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True, eq=False)
class LpProblem:
    """min c·x  s.a.  A_ub x <= b_ub,  A_eq x == b_eq,  bounds.

    Maximização é expressa com o sinal do objetivo invertido pelo chamador.
    """
    c: np.ndarray
    bounds: list
    A_ub: object = None
    b_ub: np.ndarray | None = None
    A_eq: object = None
    b_eq: np.ndarray | None = None
    names: list | None = None
    label: str = "lp"

    @property
    def nVariables(self) -> int:
        return len(self.c)

    def toText(self) -> str:
        nomes = self.names or [f"x{i}" for i in range(self.nVariables)]
        linhas = [f"\\ {self.label}", "minimize"]
        termos = [f"{coef:+.12g} {nomes[i]}" for i, coef in enumerate(self.c) if coef != 0]
        linhas.append("  obj: " + (" ".join(termos) if termos else "0"))
        linhas.append("subject to")
        for rotulo, A, b, op in (("ub", self.A_ub, self.b_ub, "<="), ("eq", self.A_eq, self.b_eq, "=")):
            if A is None:
                continue
            densa = A.toarray() if hasattr(A, "toarray") else np.asarray(A)
            for r, linha in enumerate(densa):
                termos = [f"{coef:+.12g} {nomes[j]}" for j, coef in enumerate(linha) if coef != 0]
                linhas.append(f"  {rotulo}{r}: {' '.join(termos)} {op} {b[r]:.12g}")
        linhas.append("bounds")
        for i, (lo, hi) in enumerate(self.bounds):
            lo_txt = "-inf" if lo is None else f"{lo:.12g}"
            hi_txt = "+inf" if hi is None else f"{hi:.12g}"
            linhas.append(f"  {lo_txt} <= {nomes[i]} <= {hi_txt}")
        linhas.append("end")
        return "\n".join(linhas) + "\n"


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: LpStatus
    x: np.ndarray | None
    objective: float | None
    message: str = ""

    @property
    def isOptimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL
