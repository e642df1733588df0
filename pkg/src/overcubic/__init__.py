"""Machine verification of congruences for overcubic partition triples."""
from .claims import BtTable, ClaimSpec, Kind, bt_table, builtin_claims, load_table, save_table, verify_claim
from .dissect import binomial_reduce_check, extract_progression, reconstruct
from .eta import Theta, eta_power, theta_sum
from .expr import EtaExpr, eval_expr
from .proofscript import parse, replay
from .registry import REGISTRY, verify_identity
from .report import VerificationReport
from .series import (Series, SeriesError, coeff, reduce_mod, series_add, series_inv, series_mul,
                     series_pow, substitute_power)

__version__ = "0.1.0"
