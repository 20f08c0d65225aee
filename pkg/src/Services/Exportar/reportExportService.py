"""Relatórios a partir de resultados gravados: tabelas de tamanho e de receita, curvas e planilha.

Os CSVs dependem só dos resultados lidos; o report.xlsx fica fora da comparação byte a byte.
"""
import logging
import re
from dataclasses import asdict
from pathlib import Path

import pandas as pd
import yaml
from openpyxl import Workbook
from openpyxl.styles import Font, PatternFill
from openpyxl.utils import get_column_letter

from src.Models.simulationModel import SimulationResult
from src.Services.Exportar.resultExportService import ARQUIVO_MANIFESTO, FORMATO_TS, loadResult, saveResult
from src.Services.Simulation.settleService import settle
from src.Services.Sizing.sizingService import (
    BASELINE_LABEL,
    cumulativeImbalanceCurve,
    imbalanceReductionCurve,
    requiredCapacity,
    revenueReports,
    sizingReports,
)
from src.Utils.errors import DataError

logger = logging.getLogger(__name__)

ARQUIVO_ESTUDO = "study.yaml"
ESTUDO_SIZING = "sizing"
ESTUDO_RECEITA = "revenue"

COLUNAS_TABELA_I = {
    "strategy": "Strategy",
    "required_capacity_mwh": "Required size (MWh)",
    "required_capacity_mwh_per_mwp": "Required size (MWh/MWp)",
    "reduction_vs_benchmark": "Size reduction (%)",
    "imbalance_reduction": "Imbalance reduction (%)",
}
COLUNAS_TABELA_II = {
    "strategy": "Strategy",
    "revenue": "Revenue (EUR)",
    "penalized_revenue": "Penalized revenue (EUR)",
    "aging_cost": "Aging cost (EUR)",
    "revenue_delta": "Revenue increase (%)",
}


def slug(rotulo: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", rotulo.lower()).strip("_")


class StudyRepository:
    """Um estudo = uma pasta por estratégia + study.yaml com o tipo e o baseline."""

    def save(self, tipo: str, results: dict[str, SimulationResult], pasta: str | Path, plant_capacity: float) -> Path:
        pasta = Path(pasta)
        pastas = {}
        for rotulo in sorted(results):
            nome = slug(rotulo)
            saveResult(results[rotulo], pasta / nome)
            pastas[rotulo] = nome
        documento = {
            "kind": tipo,
            "plant_capacity_mwp": float(plant_capacity),
            "baseline": BASELINE_LABEL,
            "results": pastas,
        }
        caminho = pasta / ARQUIVO_ESTUDO
        caminho.write_text(yaml.safe_dump(documento, sort_keys=True), encoding="utf-8")
        logger.info(f"Estudo '{tipo}' gravado em {pasta} ({len(pastas)} rodadas)")
        return caminho

    def load(self, pasta: str | Path) -> tuple[dict, dict[str, SimulationResult]]:
        pasta = Path(pasta)
        caminho = pasta / ARQUIVO_ESTUDO
        try:
            documento = yaml.safe_load(caminho.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as e:
            raise DataError(f"study.yaml ilegível: {e}", str(caminho)) from e
        if documento.get("kind") not in (ESTUDO_SIZING, ESTUDO_RECEITA):
            raise DataError(f"Tipo de estudo desconhecido: {documento.get('kind')!r}", str(caminho), None, "kind")
        resultados = {rotulo: loadResult(pasta / nome) for rotulo, nome in (documento.get("results") or {}).items()}
        if documento.get("baseline") not in resultados:
            raise DataError("Baseline ausente do estudo", str(caminho), None, "baseline")
        return documento, resultados


def summaryTable(results: dict[str, SimulationResult]) -> pd.DataFrame:
    linhas = []
    for rotulo in sorted(results):
        resultado = results[rotulo]
        linhas.append({
            "strategy": rotulo,
            **asdict(settle(resultado)),
            "required_capacity_mwh": requiredCapacity(resultado.contentTrace),
        })
    return pd.DataFrame(linhas)


def _salvarCsv(df: pd.DataFrame, caminho: Path) -> Path:
    df = df.copy()
    if "timestamp" in df.columns:
        df["timestamp"] = pd.DatetimeIndex(df["timestamp"]).strftime(FORMATO_TS)
    df.to_csv(caminho, index=False, lineterminator="\n")
    return caminho


def _escreverAba(wb: Workbook, titulo: str, df: pd.DataFrame):
    ws = wb.create_sheet(titulo)
    colunas = list(df.columns)
    ws.append(colunas)
    for i, _ in enumerate(colunas, start=1):
        cell = ws.cell(row=1, column=i)
        cell.font = Font(bold=True)
        cell.fill = PatternFill(start_color="D3D3D3", end_color="D3D3D3", fill_type="solid")
    for linha in df.itertuples(index=False):
        ws.append([round(v, 4) if isinstance(v, float) else v for v in linha])
    for i, col in enumerate(colunas, start=1):
        ws.column_dimensions[get_column_letter(i)].width = max(15, len(str(col)) + 3)


class ReportService:
    def __init__(self, pasta: str | Path, saida: str | Path | None = None):
        self.pasta = Path(pasta)
        self.saida = Path(saida) if saida else self.pasta / "report"

    def _carregar(self) -> tuple[dict | None, dict[str, SimulationResult]]:
        if (self.pasta / ARQUIVO_ESTUDO).exists():
            return StudyRepository().load(self.pasta)
        if (self.pasta / ARQUIVO_MANIFESTO).exists():
            resultado = loadResult(self.pasta)
            return None, {resultado.label or self.pasta.name: resultado}
        raise DataError(f"Nenhum resultado ou estudo em {self.pasta}", str(self.pasta))

    def render(self) -> dict[str, Path]:
        estudo, resultados = self._carregar()
        self.saida.mkdir(parents=True, exist_ok=True)
        tabelas = {"Summary": summaryTable(resultados)}

        if estudo is not None:
            base = resultados[estudo["baseline"]]
            estrategias = {k: v for k, v in resultados.items() if k != estudo["baseline"]}
            if estudo["kind"] == ESTUDO_SIZING:
                linhas = sizingReports(estrategias, base, float(estudo["plant_capacity_mwp"]))
                tabelas["Table I"] = pd.DataFrame([asdict(r) for r in linhas]).rename(columns=COLUNAS_TABELA_I)
            else:
                linhas = revenueReports(estrategias, base)
                tabelas["Table II"] = pd.DataFrame([asdict(r) for r in linhas]).rename(columns=COLUNAS_TABELA_II)
            ordenados = [estrategias[k] for k in sorted(estrategias)]
            tabelas["Imbalance reduction"] = imbalanceReductionCurve(ordenados, base)
            tabelas["Cumulative imbalance"] = cumulativeImbalanceCurve(ordenados, base)

        arquivos = {}
        for titulo, df in tabelas.items():
            arquivos[titulo] = _salvarCsv(df, self.saida / f"{slug(titulo)}.csv")

        wb = Workbook()
        wb.remove(wb.active)
        for titulo, df in tabelas.items():
            if titulo != "Cumulative imbalance":
                _escreverAba(wb, titulo, df)
        arquivos["workbook"] = self.saida / "report.xlsx"
        wb.save(arquivos["workbook"])
        logger.info(f"Relatório gravado em {self.saida}")
        return arquivos
