"""Pieces shared between the engines: initialization, environmental
selection, per-front crowding and DE donor wiring."""

from __future__ import annotations

import numpy as np

from .. import operators
from ..core import (
    ConfigurationError,
    crowding_truncate_indices,
    fast_nondominated_sort,
)
from . import AlgorithmConfig


def init_population(problem, pop_size: int, rng) -> np.ndarray:
    lo = problem.bounds[:, 0]
    hi = problem.bounds[:, 1]
    return lo + rng.random((pop_size, problem.n_vars)) * (hi - lo)


def rank_and_crowd(F: np.ndarray) -> tuple[np.ndarray, np.ndarray, list[np.ndarray]]:
    """Ranks plus crowding distances computed within each front."""
    from .. import _kernels

    fronts = fast_nondominated_sort(F)
    ranks = np.empty(F.shape[0], dtype=np.int64)
    crowd = np.empty(F.shape[0])
    for r, idx in enumerate(fronts):
        ranks[idx] = r
        crowd[idx] = _kernels.crowding(np.ascontiguousarray(F[idx]))
    return ranks, crowd, fronts


def environmental_select(F: np.ndarray, pop_size: int) -> np.ndarray:
    """NSGA-II survival: fill whole fronts, crowd-truncate the split front."""
    chosen: list[int] = []
    for front in fast_nondominated_sort(F):
        if len(chosen) + front.size <= pop_size:
            chosen.extend(front.tolist())
            if len(chosen) == pop_size:
                break
        else:
            remaining = pop_size - len(chosen)
            if remaining > 0:
                sub = crowding_truncate_indices(F[front], remaining)
                chosen.extend(front[sub].tolist())
            break
    return np.asarray(chosen, dtype=np.int64)


def binary_tournament(ranks: np.ndarray, crowd: np.ndarray, rng) -> int:
    a, b = rng.integers(0, ranks.size, size=2)
    if ranks[a] != ranks[b]:
        return int(a if ranks[a] < ranks[b] else b)
    if crowd[a] != crowd[b]:
        return int(a if crowd[a] > crowd[b] else b)
    return int(a)


def de_params_from(config: AlgorithmConfig) -> operators.DeParams:
    kwargs = dict(config.params)
    return operators.DeParams(
        variant=config.operator,
        F=kwargs["F"],
        CR=kwargs["CR"],
        p=int(kwargs["p"]),
        K=kwargs.get("K"),
    )


def de_offspring(
    target_idx: int,
    X: np.ndarray,
    pool: np.ndarray,
    first_front: np.ndarray,
    params: operators.DeParams,
    bounds: np.ndarray,
    rng,
) -> np.ndarray:
    """Build one DE trial for ``target_idx`` with donors drawn from ``pool``.

    Donors are sampled uniformly without replacement, excluding the target;
    the population-best donor of the best/ variants is a random member of
    the current first non-dominated front.
    """
    candidates = pool[pool != target_idx]
    n_donors = 2 * params.p + (0 if params.uses_best else 1)
    if candidates.size < n_donors:
        raise ConfigurationError(
            f"population too small for {params.variant}: need {n_donors} distinct donors"
        )
    picked = candidates[rng.choice(candidates.size, size=n_donors, replace=False)]
    if params.uses_best:
        base = X[first_front[rng.integers(first_front.size)]]
        pairs = picked
    else:
        base = X[picked[0]]
        pairs = picked[1:]
    pairs_a = X[pairs[: params.p]]
    pairs_b = X[pairs[params.p:]]
    return operators.de_mutation(X[target_idx], base, pairs_a, pairs_b, params, bounds, rng)
