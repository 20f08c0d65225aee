"""Montagem esparsa dos LPs de controle e o bloco da bateria compartilhado entre eles."""
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from src.Models.batteryModel import BatteryParams, BatteryState
from src.Models.controlModel import LpProblem
from src.Models.marketModel import PriceRecord

MOTION_PENALTY = 1e-9


def _limite(valor: float):
    return None if math.isinf(valor) else float(valor)


class MontadorLp:
    def __init__(self, label: str):
        self.label = label
        self.nomes: list[str] = []
        self.limites: list[tuple] = []
        self.custos: list[float] = []
        self._linhas: list[np.ndarray] = []
        self._colunas: list[np.ndarray] = []
        self._valores: list[np.ndarray] = []
        self._rhs: list[np.ndarray] = []
        self._nLinhas = 0

    def variaveis(self, prefixo: str, n: int, lo, hi, custo=0.0) -> np.ndarray:
        inicio = len(self.nomes)
        lo = np.broadcast_to(np.asarray(lo, dtype=float), (n,))
        hi = np.broadcast_to(np.asarray(hi, dtype=float), (n,))
        custo = np.broadcast_to(np.asarray(custo, dtype=float), (n,))
        for i in range(n):
            self.nomes.append(f"{prefixo}_{i}")
            self.limites.append((_limite(lo[i]), _limite(hi[i])))
            self.custos.append(float(custo[i]))
        return np.arange(inicio, inicio + n)

    def adicionarCusto(self, indices, valores):
        indices = np.atleast_1d(indices)
        valores = np.broadcast_to(np.asarray(valores, dtype=float), indices.shape)
        for i, v in zip(indices, valores):
            self.custos[int(i)] += float(v)

    def igualdades(self, colunas: np.ndarray, coeficientes, rhs):
        """Acrescenta uma linha por linha de `colunas` (linhas x termos)."""
        colunas = np.atleast_2d(np.asarray(colunas, dtype=int))
        n, k = colunas.shape
        coeficientes = np.broadcast_to(np.asarray(coeficientes, dtype=float), (n, k))
        linhas = np.repeat(np.arange(self._nLinhas, self._nLinhas + n), k)
        self._linhas.append(linhas)
        self._colunas.append(colunas.ravel())
        self._valores.append(coeficientes.ravel())
        self._rhs.append(np.broadcast_to(np.asarray(rhs, dtype=float), (n,)).copy())
        self._nLinhas += n

    def problema(self) -> LpProblem:
        nVars = len(self.nomes)
        if self._nLinhas:
            A_eq = sparse.coo_matrix(
                (np.concatenate(self._valores), (np.concatenate(self._linhas), np.concatenate(self._colunas))),
                shape=(self._nLinhas, nVars),
            ).tocsr()
            b_eq = np.concatenate(self._rhs)
        else:
            A_eq, b_eq = None, None
        return LpProblem(
            c=np.asarray(self.custos, dtype=float),
            bounds=list(self.limites),
            A_eq=A_eq,
            b_eq=b_eq,
            names=list(self.nomes),
            label=self.label,
        )


@dataclass(frozen=True)
class BlocoBateria:
    descarga: np.ndarray
    carga: np.ndarray
    conteudo: np.ndarray


def blocoBateria(montador: MontadorLp, state: BatteryState, params: BatteryParams, pv_minimo: np.ndarray) -> BlocoBateria:
    """Descarga d, carga ch (retirada do PV) e conteúdo após cada passo.

    conteudo_t = conteudo_{t-1} − d_t/η_Dis + η_ch·ch_t, com ch_t <= η_ch·min_s PV_{s,t}.
    """
    passos = len(pv_minimo)
    eta_ch, eta_dis = params.charge_efficiency, params.discharge_efficiency
    limite_carga = np.minimum(params.power_limit, eta_ch * np.clip(pv_minimo, 0.0, None))

    descarga = montador.variaveis("d", passos, 0.0, params.power_limit)
    carga = montador.variaveis("ch", passos, 0.0, limite_carga)
    if params.unbounded:
        conteudo = montador.variaveis("soc_e", passos, -math.inf, math.inf)
        inicial = state.content(params)
    else:
        conteudo = montador.variaveis("soc_e", passos, 0.0, params.capacity)
        # conteúdo inicial trazido para [0, Cap] garante viabilidade do comando nulo
        inicial = min(max(state.content(params), 0.0), params.capacity)

    montador.igualdades([[conteudo[0], descarga[0], carga[0]]], [1.0, 1.0 / eta_dis, -eta_ch], inicial)
    if passos > 1:
        colunas = np.column_stack([conteudo[1:], conteudo[:-1], descarga[1:], carga[1:]])
        montador.igualdades(colunas, [1.0, -1.0, 1.0 / eta_dis, -eta_ch], 0.0)
    return BlocoBateria(descarga, carga, conteudo)


def lpPrices(prices: PriceRecord) -> tuple[float, float, float]:
    """(π_s, π_+, π_-) usados no LP; preços invertidos viram a média dos dois."""
    if prices.neg_imbalance_price < prices.pos_imbalance_price:
        media = 0.5 * (prices.pos_imbalance_price + prices.neg_imbalance_price)
        return prices.spot, media, media
    return prices.spot, prices.pos_imbalance_price, prices.neg_imbalance_price


def terminalValue(price_forecast: list[PriceRecord], params: BatteryParams) -> float:
    """Valor por MWh do conteúdo restante no fim da janela: η_Dis × spot médio previsto."""
    if not price_forecast:
        return 0.0
    media = float(np.mean([p.spot for p in price_forecast]))
    return max(0.0, params.discharge_efficiency * media)
