"""MOPSO engine: swarm plus an external non-dominated archive.

The archive is capped at the population size and organized by an adaptive
grid; when full, a member from the most crowded cell is evicted, and
leaders are drawn by a roulette that favors sparse cells.  The SMPSO and
OMOPSO rows add their respective mutation schemes on top of the shared
velocity rules.
"""

from __future__ import annotations

import time

import numpy as np

from .. import operators
from .._seeding import rng_for
from ..core import ConfigurationError, Dominance, SolutionSet, dominates
from . import MOPSO, OMOPSO, SMPSO, AlgorithmConfig, RunBudget, RunResult


class _GridArchive:
    """Bounded non-dominated archive with adaptive-grid crowding control."""

    def __init__(self, capacity: int, divisions: int, rng, n_vars: int, m: int):
        self.capacity = capacity
        self.divisions = divisions
        self.rng = rng
        self.X = np.empty((0, n_vars))
        self.F = np.empty((0, m))

    def __len__(self) -> int:
        return self.F.shape[0]

    def _cells(self) -> np.ndarray:
        lo = self.F.min(axis=0)
        hi = self.F.max(axis=0)
        span = np.where(hi > lo, hi - lo, 1.0)
        idx = np.floor((self.F - lo) / span * self.divisions).astype(np.int64)
        return np.minimum(idx, self.divisions - 1)

    def insert(self, x: np.ndarray, f: np.ndarray) -> bool:
        if len(self):
            le = (self.F <= f).all(axis=1)
            lt = (self.F < f).any(axis=1)
            equal = (self.F == f).all(axis=1)
            if ((le & lt) | equal).any():
                return False  # dominated by, or duplicating, a member
            beaten = (f <= self.F).all(axis=1) & (f < self.F).any(axis=1)
            if beaten.any():
                keep = ~beaten
                self.X = self.X[keep]
                self.F = self.F[keep]
        self.X = np.vstack((self.X, x[None, :]))
        self.F = np.vstack((self.F, f[None, :]))
        if len(self) > self.capacity:
            self._evict()
        return True

    def _evict(self):
        cells = self._cells()
        _, inverse, counts = np.unique(cells, axis=0, return_inverse=True, return_counts=True)
        crowded = int(np.argmax(counts))
        members = np.nonzero(inverse == crowded)[0]
        victim = int(members[self.rng.integers(members.size)])
        keep = np.ones(len(self), dtype=bool)
        keep[victim] = False
        self.X = self.X[keep]
        self.F = self.F[keep]

    def select_leader(self) -> np.ndarray:
        if not len(self):
            raise ConfigurationError("cannot select a leader from an empty archive")
        if len(self) == 1:
            return self.X[0]
        cells = self._cells()
        _, inverse, counts = np.unique(cells, axis=0, return_inverse=True, return_counts=True)
        weights = 1.0 / counts
        probs = weights / weights.sum()
        cell = int(self.rng.choice(probs.size, p=probs))
        members = np.nonzero(inverse == cell)[0]
        return self.X[int(members[self.rng.integers(members.size)])]

    def solution_set(self) -> SolutionSet:
        return SolutionSet(self.F.copy(), self.X.copy())


def _pso_params(config: AlgorithmConfig) -> operators.PsoParams:
    mutation: operators.SmpsoMutation | operators.OmopsoMutation | None = None
    if config.operator == SMPSO:
        mutation = operators.SmpsoMutation(
            eta_pm=config.param("pm_eta"), constriction=config.param("constriction")
        )
    elif config.operator == OMOPSO:
        mutation = operators.OmopsoMutation(b=config.param("b"))
    return operators.PsoParams(
        w=config.param("w"),
        c1=config.param("c1"),
        c2=config.param("c2"),
        v_max_ratio=config.param("v_max"),
        v_change=config.param("v_change"),
        grid_divisions=config.param("grid_divisions"),
        mutation=mutation,
    )


def run_mopso(problem, config: AlgorithmConfig, budget: RunBudget, seed: int) -> RunResult:
    if config.foundation != MOPSO:
        raise ConfigurationError(f"expected a {MOPSO} configuration, got {config.foundation}")
    start = time.perf_counter()
    rng = rng_for(seed)
    params = _pso_params(config)
    bounds = problem.bounds
    pop = budget.pop_size
    gens = budget.max_generations

    lo = bounds[:, 0]
    hi = bounds[:, 1]
    X = lo + rng.random((pop, problem.n_vars)) * (hi - lo)
    V = np.zeros_like(X)
    F = problem.evaluate(X)
    evaluations = pop

    pbest_X = X.copy()
    pbest_F = F.copy()

    archive = _GridArchive(pop, params.grid_divisions, rng, problem.n_vars, problem.m)
    for i in range(pop):
        archive.insert(X[i], F[i])

    for gen in range(gens):
        for i in range(pop):
            leader = archive.select_leader()
            V[i], X[i] = operators.pso_update(
                X[i],
                V[i],
                pbest_X[i],
                leader,
                params,
                bounds,
                rng,
                particle_index=i,
                generation=gen,
                max_generations=gens,
            )
        F = problem.evaluate(X)
        evaluations += pop
        for i in range(pop):
            rel = dominates(F[i], pbest_F[i])
            if rel == Dominance.A_DOMINATES or (
                rel == Dominance.INCOMPARABLE and rng.random() < 0.5
            ):
                pbest_X[i] = X[i]
                pbest_F[i] = F[i]
            archive.insert(X[i], F[i])

    result = archive.solution_set().validate()
    return RunResult(result, evaluations, time.perf_counter() - start, seed, pop)
