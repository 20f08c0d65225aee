import sys

from cx_Freeze import setup, Executable

# o finder do cx_Freeze estoura a recursão padrão ao percorrer o grafo de imports do scipy
sys.setrecursionlimit(sys.getrecursionlimit() * 10)

build_exe_options = {
    "packages": ["os", "scipy.optimize", "scipy.stats", "rainflow", "yaml", "openpyxl"],
    "include_files": [".env", "config"],
    # pacotes opcionais do ambiente que pandas/scipy tentam importar; o app não usa nenhum
    "excludes": ["tensorflow", "tensorboard", "torch", "torchvision", "jax", "jaxlib", "numba"]
}

setup(
    name="PvBessMpc",
    version="0.1",
    description="Simulador de planta PV com bateria nos mercados day-ahead, intraday e de balanceamento",
    options={"build_exe": build_exe_options},
    executables=[Executable("app.py", target_name="pvbess")]
)
