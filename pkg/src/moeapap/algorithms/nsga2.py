"""NSGA-II engine.

Variation comes from the configured operator row: SBX+PM pairs parents by
crowded binary tournament, the DE rows make every individual a mutation
target once per generation.  Survival is (mu+lambda) non-dominated sorting
with crowding truncation of the split front.
"""

from __future__ import annotations

import time

import numpy as np

from .. import operators
from .._seeding import rng_for
from ..core import ConfigurationError, SolutionSet
from . import NSGA2, SBX_PM, AlgorithmConfig, RunBudget, RunResult
from .common import (
    binary_tournament,
    de_offspring,
    de_params_from,
    environmental_select,
    init_population,
    rank_and_crowd,
)


def run_nsga2(problem, config: AlgorithmConfig, budget: RunBudget, seed: int) -> RunResult:
    if config.foundation != NSGA2:
        raise ConfigurationError(f"expected a {NSGA2} configuration, got {config.foundation}")
    start = time.perf_counter()
    pop = budget.pop_size
    if config.operator == SBX_PM and pop < 4:
        raise ConfigurationError("SBX pairing needs a population of at least 4")
    rng = rng_for(seed)
    bounds = problem.bounds

    X = init_population(problem, pop, rng)
    F = problem.evaluate(X)
    evaluations = pop

    if config.operator == SBX_PM:
        sbx = operators.SbxParams(eta=config.param("eta_sbx"))
        pm = operators.PmParams(eta=config.param("eta_pm"), p_m=1.0 / problem.n_vars)
        de = None
    else:
        sbx = pm = None
        de = de_params_from(config)

    for _ in range(budget.max_generations):
        ranks, crowd, fronts = rank_and_crowd(F)
        children = np.empty_like(X)
        if de is None:
            for pair in range(pop // 2):
                p1 = binary_tournament(ranks, crowd, rng)
                p2 = binary_tournament(ranks, crowd, rng)
                c1, c2 = operators.sbx_crossover(X[p1], X[p2], sbx, bounds, rng)
                children[2 * pair] = operators.polynomial_mutation(c1, pm, bounds, rng)
                children[2 * pair + 1] = operators.polynomial_mutation(c2, pm, bounds, rng)
            if pop % 2:
                p1 = binary_tournament(ranks, crowd, rng)
                p2 = binary_tournament(ranks, crowd, rng)
                c1, _ = operators.sbx_crossover(X[p1], X[p2], sbx, bounds, rng)
                children[-1] = operators.polynomial_mutation(c1, pm, bounds, rng)
        else:
            everyone = np.arange(pop)
            for i in range(pop):
                children[i] = de_offspring(i, X, everyone, fronts[0], de, bounds, rng)
        F_children = problem.evaluate(children)
        evaluations += pop

        X = np.vstack((X, children))
        F = np.vstack((F, F_children))
        keep = environmental_select(F, pop)
        X = X[keep]
        F = F[keep]

    first = np.nonzero(np.asarray(_first_front_mask(F)))[0]
    result = SolutionSet(F[first], X[first]).validate()
    return RunResult(result, evaluations, time.perf_counter() - start, seed, pop)


def _first_front_mask(F: np.ndarray) -> np.ndarray:
    from .. import _kernels

    return _kernels.nd_mask(np.ascontiguousarray(F))
