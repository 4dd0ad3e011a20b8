from .scenario import CHECKS, Scenario, load_scenario, parse_n_set, parse_scenario
from .sweep import (
    SweepRecord,
    load_records,
    records_to_csv,
    records_to_frame,
    records_to_json,
    run_sweep,
    save_records,
    sweep_potential,
)
from .fitting import PowerLawFit, fit_error_law, fit_power_law
from .checks import KmsCheck, kms_check, shift_invariance_check, symbol_integral
from .runner import ScenarioRunner

__all__ = [
    "CHECKS",
    "Scenario",
    "load_scenario",
    "parse_n_set",
    "parse_scenario",
    "SweepRecord",
    "load_records",
    "records_to_csv",
    "records_to_frame",
    "records_to_json",
    "run_sweep",
    "save_records",
    "sweep_potential",
    "PowerLawFit",
    "fit_error_law",
    "fit_power_law",
    "KmsCheck",
    "kms_check",
    "shift_invariance_check",
    "symbol_integral",
    "ScenarioRunner",
]
