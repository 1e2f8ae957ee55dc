"""Matrix-valued truncated Toeplitz operators on model spaces, with a verification harness."""

from .laurent import GammaStructure, MatLaurent, VecLaurent
from .inner import InnerFunction, PotapovFactor, potapov_factor, random_commuting_pair
from .window import Window, WindowOperator, mult_op, proj_model, model_basis
from .conjugations import AntilinearOperator, c_lambda_psi, c_theta
from .operators import matto, hankel, hankel_tilde

__version__ = "0.1.0"

__all__ = [
    "AntilinearOperator",
    "GammaStructure",
    "InnerFunction",
    "MatLaurent",
    "PotapovFactor",
    "VecLaurent",
    "Window",
    "WindowOperator",
    "c_lambda_psi",
    "c_theta",
    "hankel",
    "hankel_tilde",
    "matto",
    "model_basis",
    "mult_op",
    "potapov_factor",
    "proj_model",
    "random_commuting_pair",
]
