"""Aritmética de liquidação por PTU: preço de desequilíbrio, receita R e receita penalizada R'.

Todas as quantidades são energias da PTU (MWh) e dinheiro em euros.
"""
from src.Models.marketModel import MarketPosition, PriceRecord, SettlementRecord
from src.Utils.errors import DomainError


def balancingPriceFor(imbalance: float, prices: PriceRecord) -> float:
    if imbalance > 0:
        return prices.pos_imbalance_price
    if imbalance < 0:
        return prices.neg_imbalance_price
    # multiplica zero; spot só para determinismo
    return prices.spot


def imbalanceOf(delivered_total: float, position: MarketPosition) -> float:
    return delivered_total + position.intraday_energy - position.day_ahead_energy


def ptuRevenue(delivered_total: float, position: MarketPosition, prices: PriceRecord) -> float:
    """R = π_s·E_c − π_ID·E_ID + (E + E_ID − E_c)·π_B."""
    desequilibrio = imbalanceOf(delivered_total, position)
    return (
        prices.spot * position.day_ahead_energy
        - position.intraday_price * position.intraday_energy
        + desequilibrio * balancingPriceFor(desequilibrio, prices)
    )


def penalizedPtuRevenue(delivered_pv: float, delivered_bess: float, position: MarketPosition,
                        prices: PriceRecord, aging_cost: float) -> float:
    """R' = π_s(E_PV + E_BESS) − (E_PV + E_BESS + E_ID − E_c)(π_s − π_B) − C."""
    if aging_cost < 0:
        raise DomainError(f"aging_cost não pode ser negativo: {aging_cost}")
    entregue = delivered_pv + delivered_bess
    desequilibrio = imbalanceOf(entregue, position)
    return (
        prices.spot * entregue
        - desequilibrio * (prices.spot - balancingPriceFor(desequilibrio, prices))
        - aging_cost
    )


def settlePtu(delivered_pv: float, delivered_bess: float, position: MarketPosition,
              prices: PriceRecord, aging_cost: float = 0.0) -> SettlementRecord:
    if aging_cost < 0:
        raise DomainError(f"aging_cost não pode ser negativo: {aging_cost}")
    entregue = delivered_pv + delivered_bess
    receita = ptuRevenue(entregue, position, prices)
    return SettlementRecord(
        ptu_index=position.ptu_index,
        delivered_pv=delivered_pv,
        delivered_bess=delivered_bess,
        intraday_energy=position.intraday_energy,
        day_ahead_energy=position.day_ahead_energy,
        imbalance=imbalanceOf(entregue, position),
        revenue=receita,
        aging_cost=aging_cost,
        # R − C coincide com R' sempre que π_ID = π_s
        penalized_revenue=receita - aging_cost,
    )
