"""Saturated powers of ideals and modules over Q[x_1..x_d], the lengths of
their torsion quotients and the resulting epsilon-multiplicity estimates."""

from satpow.asymptotics import (
    AsymptoticReport,
    epsilon_estimate,
    run_sequence,
    tau_check,
)
from satpow.groebner import GroebnerBasis, buchberger
from satpow.ideal_ops import (
    AlgebraError,
    Ideal,
    colon,
    intersect,
    maximal_ideal,
    saturate_colon,
    saturate_elim,
)
from satpow.module_ops import (
    InfiniteLengthError,
    SubmoduleSpec,
    module_power,
    module_saturate,
    quotient_length,
    torsion_h0,
)
from satpow.polycore import GREVLEX, LEX, Order, Poly, Ring, VecPoly

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "AsymptoticReport",
    "GREVLEX",
    "GroebnerBasis",
    "Ideal",
    "InfiniteLengthError",
    "LEX",
    "Order",
    "Poly",
    "Ring",
    "SubmoduleSpec",
    "VecPoly",
    "buchberger",
    "colon",
    "epsilon_estimate",
    "intersect",
    "maximal_ideal",
    "module_power",
    "module_saturate",
    "quotient_length",
    "run_sequence",
    "saturate_colon",
    "saturate_elim",
    "tau_check",
    "torsion_h0",
]
