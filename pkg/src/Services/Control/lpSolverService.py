import logging
from itertools import count
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

from src.Models.controlModel import LpProblem, LpSolution, LpStatus
from src.Utils.errors import SolverError

logger = logging.getLogger(__name__)

_contador = count()

STATUS_LINPROG = {
    0: LpStatus.OPTIMAL,
    2: LpStatus.INFEASIBLE,
    3: LpStatus.UNBOUNDED,
}


def solveLp(problem: LpProblem, debug_dir: str | None = None) -> LpSolution:
    if debug_dir:
        dumpProblem(problem, debug_dir)

    resultado = linprog(
        problem.c,
        A_ub=problem.A_ub,
        b_ub=problem.b_ub,
        A_eq=problem.A_eq,
        b_eq=problem.b_eq,
        bounds=problem.bounds,
        method="highs",
        options={"primal_feasibility_tolerance": 1e-9, "dual_feasibility_tolerance": 1e-9},
    )

    status = STATUS_LINPROG.get(resultado.status)
    if status is None:
        # 1 = limite de iterações, 4 = dificuldade numérica
        raise SolverError(f"Falha do solver em '{problem.label}': {resultado.message}")
    if status is not LpStatus.OPTIMAL:
        logger.debug(f"LP '{problem.label}' terminou como {status.value}")
        return LpSolution(status, None, None, resultado.message)
    return LpSolution(status, np.asarray(resultado.x), float(resultado.fun), resultado.message)


def dumpProblem(problem: LpProblem, debug_dir: str):
    pasta = Path(debug_dir)
    pasta.mkdir(parents=True, exist_ok=True)
    caminho = pasta / f"{next(_contador):06d}_{problem.label}.lp.txt"
    caminho.write_text(problem.toText(), encoding="utf-8")
    logger.debug(f"LP salvo em {caminho}")
