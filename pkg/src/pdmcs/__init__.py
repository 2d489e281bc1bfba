"""Coherent states of position-dependent-mass oscillators.

Exactly solvable PDM systems obtained from the constant-mass linear and
singular oscillators by a point transformation y = s(x), together with
their su(1,1) ladder structure and the Glauber, Barut-Girardello and
Perelomov coherent states built on them.
"""
from .coherent import CoherentState, CSKind
from .errors import AccuracyError, DomainError, UsageError
from .massmap import MassKind, MassProfile, parse_profile_record
from .numerics import GridFunction, PatchGrid
from .verify import SuiteConfig, VerificationReport, run_suite
from .xspace import POTENTIAL_IDS, PdmSystem, make_system
from .yspace import FockVector, SingularParams, params_from_g0

__all__ = [
    "AccuracyError",
    "CSKind",
    "CoherentState",
    "DomainError",
    "FockVector",
    "GridFunction",
    "MassKind",
    "MassProfile",
    "POTENTIAL_IDS",
    "PatchGrid",
    "PdmSystem",
    "SingularParams",
    "SuiteConfig",
    "UsageError",
    "VerificationReport",
    "make_system",
    "params_from_g0",
    "parse_profile_record",
    "run_suite",
]

__version__ = "0.1.0"
