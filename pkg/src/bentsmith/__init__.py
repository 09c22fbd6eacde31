"""Evolutionary search for (anti-)self-dual bent Boolean functions."""

from .core import (
    MAX_VARIABLES,
    NotBentError,
    SpectralReport,
    TruthTable,
    WalshSpectrum,
    bent_nonlinearity,
    classify,
    dual,
    is_bent,
    nonlinearity,
    wht_fast,
)
from .fitness import (
    FitnessValue,
    Objective,
    ObjectiveKind,
    OddVariableCountError,
    fit1,
    fit2,
    fitness_nl,
)
from .engine import ConfigError, DirectEvaluator, EngineConfig, RunRecord, run_campaign, run_steady_state
from .oracle import CensusReport, TooLargeError, census, census_with_witnesses, wht_direct

__all__ = [
    "MAX_VARIABLES",
    "NotBentError",
    "SpectralReport",
    "TruthTable",
    "WalshSpectrum",
    "bent_nonlinearity",
    "classify",
    "dual",
    "is_bent",
    "nonlinearity",
    "wht_fast",
    "FitnessValue",
    "Objective",
    "ObjectiveKind",
    "OddVariableCountError",
    "fit1",
    "fit2",
    "fitness_nl",
    "ConfigError",
    "DirectEvaluator",
    "EngineConfig",
    "RunRecord",
    "run_campaign",
    "run_steady_state",
    "CensusReport",
    "TooLargeError",
    "census",
    "census_with_witnesses",
    "wht_direct",
]
