"""Vacuum radiation-pressure fluctuation numerics for switched-polarizability atoms."""
from ._kernels import BACKEND

__version__ = "0.1.0"
