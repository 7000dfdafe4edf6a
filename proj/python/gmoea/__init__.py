"""GAN-assisted multiobjective evolutionary optimization.

Thin wrapper over the C++ core: benchmark problems, SPEA2 selection,
quality indicators, and full optimization runs.
"""

from ._gmoea import (
    ConfigError,
    Error,
    dominates,
    environmental_select,
    evaluate,
    hv,
    igd,
    pareto_front,
    problem_info,
    problem_names,
    run,
    spea2_fitness,
    wilcoxon,
)

__all__ = [
    "ConfigError",
    "Error",
    "dominates",
    "environmental_select",
    "evaluate",
    "hv",
    "igd",
    "pareto_front",
    "problem_info",
    "problem_names",
    "run",
    "spea2_fitness",
    "wilcoxon",
]
