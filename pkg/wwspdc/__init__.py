"""Weyl-Wigner stochastic model of SPDC polarization entanglement

Vacuum-field sampling, Weyl-symbol operator algebra, detection-rate rules,
a Fock-space oracle and Clauser-Horne analysis.
"""

__version__ = "0.1.0"

from .base import (
    ConfigError,
    Convention,
    DomainError,
    EfficiencyPair,
    OracleCheckError,
    Party,
    PreconditionError,
    RateEstimate,
    SimulationError,
)
from .gaussian_modes import SamplerConfig, VacuumSample, sample_vacuum
from .polarization_fields import AnalyzerAngles
from .spdc_evolution import SpdcParams
from .bell_analysis import ChResult, ChSetting, ch_evaluate, standard_setting

__all__ = [
    'AnalyzerAngles',
    'ChResult',
    'ChSetting',
    'ConfigError',
    'Convention',
    'DomainError',
    'EfficiencyPair',
    'OracleCheckError',
    'Party',
    'PreconditionError',
    'RateEstimate',
    'SamplerConfig',
    'SimulationError',
    'SpdcParams',
    'VacuumSample',
    'ch_evaluate',
    'sample_vacuum',
    'standard_setting',
    '__version__',
]
