"""Numerics and exact algebra for genus-2 theta functions and their zero loci."""

from .characteristics import Characteristic, Parity, direct_sum, enumerate_characteristics, half_period, parity, split
from .siegel import PeriodMatrix, SymplecticIntMatrix, act_on_pair, act_on_siegel, reduce_mod_lattice
from .theta import ThetaJet, ThetaResult, theta, theta_jet, thetanull

__all__ = [
    "Characteristic", "Parity", "direct_sum", "enumerate_characteristics", "half_period", "parity", "split",
    "PeriodMatrix", "SymplecticIntMatrix", "act_on_pair", "act_on_siegel", "reduce_mod_lattice",
    "ThetaJet", "ThetaResult", "theta", "theta_jet", "thetanull",
]

__version__ = "0.1.0"
