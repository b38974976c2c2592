"""Portfolio runtime: run member algorithms independently, merge their
solution sets through the Restructure rule, and return the best candidate
set by the configured metric.

The output rule considers every member's set plus the restructured union,
so the portfolio's score on a problem is the maximum over all candidates.
Member run seeds are derived from (run seed, member fingerprint), so adding
or removing members never perturbs the runs of the remaining members and
identical configurations reproduce identical runs.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import algorithms, indicators
from ._kernels import nd_mask
from ._seeding import seed_sequence
from .algorithms import AlgorithmConfig, RunBudget, RunResult
from .core import ContractViolationError, SolutionSet, crowding_truncate_indices

MAX_MEMBERS = 10
RESTRUCTURE = "restructure"


@dataclass(frozen=True)
class Portfolio:
    members: tuple[AlgorithmConfig, ...]
    name: str = "portfolio"

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not 1 <= len(members) <= MAX_MEMBERS:
            raise ContractViolationError(
                f"a portfolio holds between 1 and {MAX_MEMBERS} members, got {len(members)}"
            )
        for m in members:
            if not isinstance(m, AlgorithmConfig):
                raise ContractViolationError("portfolio members must be AlgorithmConfig values")

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class PapRunResult:
    member_results: tuple[RunResult | None, ...] = field(repr=False)
    restructured: SolutionSet = field(repr=False)
    output: SolutionSet = field(repr=False)
    chosen_source: int | str
    member_metrics: tuple[float | None, ...]
    restructure_metric: float
    failures: tuple[tuple[int, str], ...] = ()

    @property
    def omega(self) -> float:
        """Best candidate metric (the portfolio's score on this run)."""
        best = self.restructure_metric
        for value in self.member_metrics:
            if value is not None and value > best:
                best = value
        return best

    @property
    def best_member_metric(self) -> float:
        values = [v for v in self.member_metrics if v is not None]
        if not values:
            raise ContractViolationError("no successful member runs")
        return max(values)


def restructure(sets, cap: int) -> SolutionSet:
    """Merge solution sets into one non-dominated set of at most ``cap``.

    Exact objective duplicates are pruned (first occurrence wins), then the
    non-dominated subset of the union is extracted and crowd-truncated.
    """
    sets = list(sets)
    if not sets:
        raise ContractViolationError("restructure needs at least one set")
    objectives = [s.objectives if isinstance(s, SolutionSet) else np.atleast_2d(np.asarray(s, float)) for s in sets]
    m = objectives[0].shape[1]
    if any(o.shape[1] != m for o in objectives):
        raise ContractViolationError("cannot restructure sets with different objective counts")
    decisions = None
    if all(isinstance(s, SolutionSet) and s.decisions is not None for s in sets):
        widths = {np.asarray(s.decisions).shape[1:] for s in sets if len(s)}
        if len(widths) <= 1:
            decisions = [np.asarray(s.decisions) for s in sets]
    F = np.vstack(objectives)
    X = np.vstack(decisions) if decisions is not None else None

    seen: dict[bytes, None] = {}
    fresh = np.empty(F.shape[0], dtype=bool)
    for i, row in enumerate(F):
        key = row.tobytes()
        fresh[i] = key not in seen
        seen[key] = None
    F = F[fresh]
    if X is not None:
        X = X[fresh]

    if F.shape[0]:
        keep = nd_mask(np.ascontiguousarray(F))
        F = F[keep]
        if X is not None:
            X = X[keep]
    if F.shape[0] > cap:
        sel = crowding_truncate_indices(F, cap)
        F = F[sel]
        if X is not None:
            X = X[sel]
    return SolutionSet(F, X)


def member_seed(run_seed: int, config: AlgorithmConfig) -> int:
    """Stable per-member seed: a function of the run seed and the member's
    configuration fingerprint only, never of its position."""
    state = seed_sequence(run_seed, "member", config.fingerprint()).generate_state(1, np.uint64)
    return int(state[0])


def _run_member(args):
    config, problem_name, budget, seed = args
    from . import problems

    return algorithms.run(config, problems.get_problem(problem_name), budget, seed)


def run_pap(
    portfolio: Portfolio,
    problem,
    budget: RunBudget,
    seed: int,
    ctx: indicators.HvContext | None = None,
    workers: int = 1,
    runner=None,
) -> PapRunResult:
    """Execute every member, restructure, and pick the metric-best output.

    Ties prefer the restructured set, then the lowest member index.  Failed
    member runs are excluded from the candidates and recorded; if every
    member fails the run errors out.  ``runner`` may replace the engine
    dispatch (sequential execution only), which is how synthetic member
    behaviors are injected in tests.
    """
    if ctx is None:
        ctx = indicators.HvContext.for_problem(problem.name)

    jobs = [
        (config, problem.name, budget, member_seed(seed, config))
        for config in portfolio.members
    ]
    results: list[RunResult | None] = [None] * len(jobs)
    failures: list[tuple[int, str]] = []
    if runner is not None:
        for i, (config, _, bud, mseed) in enumerate(jobs):
            try:
                results[i] = runner(config, problem, bud, mseed)
            except Exception as exc:  # noqa: BLE001 - candidate exclusion is the contract
                failures.append((i, f"{type(exc).__name__}: {exc}"))
    elif workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_member, job) for job in jobs]
        for i, future in enumerate(futures):
            try:
                results[i] = future.result()
            except Exception as exc:  # noqa: BLE001
                failures.append((i, f"{type(exc).__name__}: {exc}"))
    else:
        for i, job in enumerate(jobs):
            try:
                results[i] = _run_member(job)
            except Exception as exc:  # noqa: BLE001
                failures.append((i, f"{type(exc).__name__}: {exc}"))

    good_sets = [r.solution_set for r in results if r is not None]
    if not good_sets:
        raise ContractViolationError(
            "every member run failed: " + "; ".join(msg for _, msg in failures)
        )

    merged = restructure(good_sets, cap=budget.pop_size)
    member_metrics = tuple(
        indicators.ihvr(r.solution_set, ctx) if r is not None else None for r in results
    )
    restructure_metric = indicators.ihvr(merged, ctx)

    chosen: int | str = RESTRUCTURE
    output = merged
    best = restructure_metric
    for i, value in enumerate(member_metrics):
        if value is not None and value > best:
            chosen = i
            output = results[i].solution_set
            best = value

    return PapRunResult(
        member_results=tuple(results),
        restructured=merged,
        output=output,
        chosen_source=chosen,
        member_metrics=member_metrics,
        restructure_metric=restructure_metric,
        failures=tuple(failures),
    )
