"""
Scenario runner: executes every check a scenario lists and collects a report
"""
import json
import logging
import time
from dataclasses import asdict
from typing import Dict, List, Optional

from config import get_settings
from src.asymptotics import envelope, predict, prediction_cycle
from src.eulermaclaurin import log_rho_summand, residual_constant, residual_table
from src.exceptions import ValidationError
from src.series import ms_constant
from .checks import kms_check, shift_invariance_check
from .fitting import fit_power_law
from .scenario import Scenario
from .sweep import SweepRecord, run_sweep, save_records

logger = logging.getLogger(__name__)

EM_SIZES = (64, 128, 256, 512, 1024, 2048, 4096)


class ScenarioRunner:
    """Run the checks of one scenario and keep their results"""

    def __init__(self, scenario: Scenario, workers: Optional[int] = None):
        self.scenario = scenario
        self.workers = workers
        self.potential = scenario.potential()
        self.records: List[SweepRecord] = []
        self.results: Dict = {"scenario": scenario.name, "checks": {}}

    @property
    def spectral_n(self) -> int:
        """Largest scenario n the eigensolver accepts"""
        cap = get_settings().eigen_cap
        usable = [n for n in self.scenario.n_values if n <= cap]
        if not usable:
            raise ValidationError(f"every n exceeds the eigensolver cap {cap}")
        return usable[-1]

    def run_ratio(self) -> Dict:
        if not self.records:
            self.records = run_sweep(self.scenario, self.workers)
        if self.scenario.output:
            save_records(self.records, self.scenario.output, self.scenario.format)
        last = self.records[-1]
        return {"count": len(self.records), "last": asdict(last), "output": self.scenario.output}

    def run_predict(self) -> Dict:
        p = predict(self.potential, self.scenario.epsilon)
        env = envelope(p)
        summary = {
            "G": p.G,
            "alpha": p.alpha,
            "jumps": [{"c": j.c, "side": j.side.value, "beta": j.beta, "gamma": j.gamma} for j in p.jumps],
            "limsup": env.limsup,
            "liminf": env.liminf,
            "denominators": env.denominators,
        }
        try:
            summary["cycle"] = prediction_cycle(p)
        except ValidationError as e:
            logger.info(f"No finite prediction cycle: {e}")
        return summary

    def run_fit(self) -> Dict:
        if not self.records:
            self.records = run_sweep(self.scenario, self.workers)
        fit = fit_power_law(self.records)
        return {**asdict(fit), "best_model": fit.best_model}

    def run_kms(self) -> Dict:
        n = self.spectral_n
        result = kms_check(self.potential, n, self.scenario.phi, self.scenario.epsilon)
        return {"n": n, "phi": self.scenario.phi, **result._asdict()}

    def run_eigs_invariance(self) -> Dict:
        n = self.spectral_n
        gap = shift_invariance_check(self.potential, n, self.scenario.epsilon, self.scenario.eps_compare)
        return {"n": n, "eps_a": self.scenario.epsilon, "eps_b": self.scenario.eps_compare, "gap": gap}

    def run_em(self) -> Dict:
        g = log_rho_summand(self.potential)
        if self.potential.has_jumps:
            formula, epsilon = "jump", 1.0
        else:
            formula, epsilon = "shifted", self.scenario.epsilon
        table = residual_table(g, EM_SIZES, formula, epsilon)
        return {
            "formula": formula,
            "C": residual_constant(table),
            "rows": [{**asdict(row), "scaled_residual": row.scaled_residual} for row in table],
        }

    def run_ms(self) -> Dict:
        result = ms_constant(self.potential)
        return {**asdict(result), "discrepancy": result.discrepancy}

    def run(self) -> Dict:
        """Execute the scenario's checks in order"""
        handlers = {
            "ratio": self.run_ratio,
            "predict": self.run_predict,
            "fit": self.run_fit,
            "kms": self.run_kms,
            "eigs-invariance": self.run_eigs_invariance,
            "em": self.run_em,
            "ms": self.run_ms,
        }
        for check in self.scenario.checks:
            start = time.time()
            logger.info(f"[{self.scenario.name}] running {check}")
            self.results["checks"][check] = handlers[check]()
            self.results["checks"][check]["seconds"] = round(time.time() - start, 3)
        return self.results

    def save_report(self, filepath: str) -> None:
        """Save collected results to JSON"""
        with open(filepath, "w") as f:
            json.dump(self.results, f, indent=2)
