"""Benchmark problem registry: ZDT1-6, DTLZ1-7, WFG1-9 and UF1-10.

Problem dimensions are fixed to the experiment configuration (ZDT1-3 use 30
variables, ZDT4/6 ten, ZDT5 eleven binary substrings, DTLZ eleven, WFG
twelve with a 4+8 position/distance split, UF thirty) and cannot be
overridden.  Reference fronts and objective boxes ship as plain-text data
files; regenerate them with ``scripts/generate_reference_data.py``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable

import numpy as np

from ..core import ConfigurationError, ContractViolationError, ProblemSpec
from . import dtlz, uf, wfg, zdt
from .fronts import UnsupportedProblemError, sample_reference_front
from .zdt import ZDT5_BIT_LAYOUT, ZDT5_TOTAL_BITS

__all__ = [
    "Problem",
    "UnsupportedProblemError",
    "available_problems",
    "default_budget",
    "evaluate",
    "get_problem",
    "objective_box",
    "reference_front",
    "sample_reference_front",
    "spec_for",
]

_BOUNDS_EPS = 1e-9


@dataclass(frozen=True)
class Problem:
    """One benchmark instance: identity, dimensions, bounds and evaluator.

    ``n`` is the nominal decision dimension; ``n_vars`` the dimension the
    variation operators act on (they differ only for ZDT5, whose eleven
    bitstrings are relaxed to one real gene per bit).
    """

    name: str
    suite: str
    index: int
    m: int
    n: int
    n_vars: int
    bounds: np.ndarray = field(repr=False)
    encoding: str
    _fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    bit_layout: tuple[int, ...] | None = None

    @property
    def lower(self) -> np.ndarray:
        return self.bounds[:, 0]

    @property
    def upper(self) -> np.ndarray:
        return self.bounds[:, 1]

    def evaluate(self, X) -> np.ndarray:
        """Evaluate one decision vector or a batch of rows."""
        arr = np.asarray(X, dtype=np.float64)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        if arr.shape[1] != self.n_vars:
            raise ContractViolationError(
                f"{self.name} expects {self.n_vars} variables, got {arr.shape[1]}"
            )
        if ((arr < self.lower - _BOUNDS_EPS) | (arr > self.upper + _BOUNDS_EPS)).any():
            raise ContractViolationError(f"decision vector out of bounds for {self.name}")
        F = self._fn(arr)
        return F[0] if single else F

    def evaluate_bits(self, bits) -> np.ndarray:
        """Evaluate a binary genotype directly (ZDT5 only)."""
        if self.encoding != "binary":
            raise ContractViolationError(f"{self.name} is not a binary-encoded problem")
        arr = np.asarray(bits)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        F = zdt.zdt5_bits(arr)
        return F[0] if single else F


def _box(n: int, lo: float, hi: float) -> np.ndarray:
    b = np.empty((n, 2))
    b[:, 0] = lo
    b[:, 1] = hi
    return b


def _uf_bounds(index: int) -> np.ndarray:
    if index == 3:
        return _box(uf.N_VARS, 0.0, 1.0)
    if index == 4:
        b = _box(uf.N_VARS, -2.0, 2.0)
    elif index >= 8:
        b = _box(uf.N_VARS, -2.0, 2.0)
        b[1] = (0.0, 1.0)
    else:
        b = _box(uf.N_VARS, -1.0, 1.0)
    b[0] = (0.0, 1.0)
    return b


def _build_registry() -> dict[str, Problem]:
    reg: dict[str, Problem] = {}

    def add(p: Problem):
        reg[p.name] = p

    zdt_fns = {1: zdt.zdt1, 2: zdt.zdt2, 3: zdt.zdt3, 4: zdt.zdt4, 6: zdt.zdt6}
    zdt_dims = {1: 30, 2: 30, 3: 30, 4: 10, 6: 10}
    for i, fn in zdt_fns.items():
        n = zdt_dims[i]
        bounds = _box(n, 0.0, 1.0)
        if i == 4:
            bounds[1:] = (-5.0, 5.0)
        add(Problem(f"ZDT{i}", "ZDT", i, 2, n, n, bounds, "real", fn))
    add(
        Problem(
            "ZDT5",
            "ZDT",
            5,
            2,
            len(ZDT5_BIT_LAYOUT),
            ZDT5_TOTAL_BITS,
            _box(ZDT5_TOTAL_BITS, 0.0, 1.0),
            "binary",
            zdt.zdt5,
            bit_layout=ZDT5_BIT_LAYOUT,
        )
    )

    dtlz_fns = [dtlz.dtlz1, dtlz.dtlz2, dtlz.dtlz3, dtlz.dtlz4, dtlz.dtlz5, dtlz.dtlz6, dtlz.dtlz7]
    for i, fn in enumerate(dtlz_fns, start=1):
        add(Problem(f"DTLZ{i}", "DTLZ", i, 2, 11, 11, _box(11, 0.0, 1.0), "real", fn))

    wfg.validate_split(12, 3, 4, 8)
    for i in range(1, 10):
        bounds = np.column_stack((np.zeros(12), wfg.upper_bounds(12)))
        fn = (lambda idx: lambda X: wfg.wfg_evaluate(idx, X, m=3, k=4))(i)
        add(Problem(f"WFG{i}", "WFG", i, 3, 12, 12, bounds, "real", fn))

    uf_fns = [uf.uf1, uf.uf2, uf.uf3, uf.uf4, uf.uf5, uf.uf6, uf.uf7, uf.uf8, uf.uf9, uf.uf10]
    for i, fn in enumerate(uf_fns, start=1):
        m = 2 if i <= 7 else 3
        add(Problem(f"UF{i}", "UF", i, m, uf.N_VARS, uf.N_VARS, _uf_bounds(i), "real", fn))

    return reg


_REGISTRY = _build_registry()
_NAME_RE = re.compile(r"^(ZDT|DTLZ|WFG|UF)\s*(\d+)$", re.IGNORECASE)
_SUITE_ORDER = {"ZDT": 0, "DTLZ": 1, "WFG": 2, "UF": 3}


def available_problems() -> list[str]:
    return sorted(_REGISTRY, key=lambda s: (_SUITE_ORDER[_REGISTRY[s].suite], _REGISTRY[s].index))


def get_problem(name: str) -> Problem:
    match = _NAME_RE.match(str(name).strip())
    if match:
        key = match.group(1).upper() + match.group(2)
        if key in _REGISTRY:
            return _REGISTRY[key]
    raise UnsupportedProblemError(f"unknown benchmark problem {name!r}")


def evaluate(name: str, x) -> np.ndarray:
    """Evaluate a decision vector (or batch) on the named benchmark."""
    return get_problem(name).evaluate(x)


@lru_cache(maxsize=None)
def reference_front(name: str) -> np.ndarray:
    """Load the shipped reference front (objective rows) for a problem."""
    problem = get_problem(name)
    fname = f"{problem.name.lower()}_front.txt"
    try:
        text = resources.files(__package__).joinpath("data", fname).read_text()
    except FileNotFoundError as exc:
        raise ConfigurationError(
            f"reference front file {fname!r} is missing; run scripts/generate_reference_data.py"
        ) from exc
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    F = np.asarray([[float(v) for v in ln.split()] for ln in lines])
    if F.ndim != 2 or F.shape[1] != problem.m:
        raise ConfigurationError(f"malformed reference front file {fname!r}")
    return F


@lru_cache(maxsize=None)
def _suite_boxes(suite: str) -> dict:
    fname = f"{suite.lower()}_boxes.json"
    try:
        text = resources.files(__package__).joinpath("data", fname).read_text()
    except FileNotFoundError as exc:
        raise ConfigurationError(
            f"objective-box metadata {fname!r} is missing; run scripts/generate_reference_data.py"
        ) from exc
    return json.loads(text)


def objective_box(name: str) -> np.ndarray:
    """Per-objective [ideal, upper] ranges for the normalized HV metrics."""
    problem = get_problem(name)
    boxes = _suite_boxes(problem.suite)
    if problem.name not in boxes:
        raise ConfigurationError(f"no objective box recorded for {problem.name}")
    box = np.asarray(boxes[problem.name], dtype=np.float64)
    if box.shape != (problem.m, 2) or not (box[:, 0] < box[:, 1]).all():
        raise ConfigurationError(f"invalid objective box metadata for {problem.name}")
    return box


def spec_for(name: str) -> ProblemSpec:
    """Assemble the full problem record including front and objective box."""
    p = get_problem(name)
    return ProblemSpec(
        name=p.name,
        m=p.m,
        n=p.n,
        bounds=p.bounds,
        encoding=p.encoding,
        reference_front=reference_front(p.name),
        objective_box=objective_box(p.name),
    )


def default_budget(name: str) -> tuple[int, int]:
    """(population size, max generations) defaults per benchmark suite."""
    p = get_problem(name)
    if p.suite == "UF":
        return (100, 500) if p.index <= 7 else (150, 600)
    if p.suite == "WFG":
        return (150, 250)
    return (100, 250)
