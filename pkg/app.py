import argparse
import logging
import sys

from src.Config import settings

logger = logging.getLogger("app")


def criarParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvbess", description="Simulador de planta PV com bateria nos mercados de energia")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING ou ERROR")
    sub = parser.add_subparsers(dest="comando", required=True)

    for nome, ajuda in (
        ("simulate", "simula um período com a estratégia configurada"),
        ("size", "dimensionamento com bateria ilimitada nas quatro estratégias"),
        ("revenue", "estudo de receita das quatro estratégias frente ao baseline sem bateria"),
    ):
        p = sub.add_parser(nome, help=ajuda)
        p.add_argument("--config", required=True)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--output", default=None)
        p.add_argument("--debug-lp", default=None, help="pasta para gravar os LPs em caso de falha do solver")
        if nome == "simulate":
            p.add_argument("--strategy", default=None, help="ex.: RevenueMax-ID-stochastic")

    p = sub.add_parser("generate-data", help="gera PV, previsões e preços sintéticos")
    p.add_argument("--config", required=True, help="especificação YAML da geração")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)

    p = sub.add_parser("report", help="tabelas e curvas a partir de resultados gravados")
    p.add_argument("result_dir")
    p.add_argument("--output", default=None)
    return parser


def executar(args: argparse.Namespace) -> dict:
    if args.comando == "simulate":
        from src.Controllers.simulateController import SimulateController
        return SimulateController.simular(args.config, args.seed, args.output, args.strategy, args.debug_lp)
    if args.comando == "size":
        from src.Controllers.sizingController import SizingController
        return SizingController.dimensionar(args.config, args.seed, args.output, args.debug_lp)
    if args.comando == "revenue":
        from src.Controllers.revenueController import RevenueController
        return RevenueController.estudarReceita(args.config, args.seed, args.output, args.debug_lp)
    if args.comando == "generate-data":
        from src.Controllers.dataController import DataController
        return DataController.gerarDados(args.config, args.seed, args.output)
    from src.Controllers.reportController import ReportController
    return ReportController.gerarRelatorio(args.result_dir, args.output)


def main(argv: list[str] | None = None) -> int:
    args = criarParser().parse_args(argv)
    settings.configureLogging(args.log_level)
    resultado = executar(args)
    if resultado["status"] == "ok":
        logger.info(resultado["mensagem"])
    else:
        print(resultado["mensagem"], file=sys.stderr)
    return resultado["codigo"]


if __name__ == "__main__":
    sys.exit(main())
