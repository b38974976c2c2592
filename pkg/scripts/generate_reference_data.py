#!/usr/bin/env python3
"""Regenerate the shipped reference fronts and objective-box metadata.

Writes one ``<problem>_front.txt`` per problem plus one ``<suite>_boxes.json``
per suite into ``src/moeapap/problems/data/``.  Deterministic; rerunning
reproduces the files byte for byte.
"""

from __future__ import annotations

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moeapap.problems import available_problems, get_problem  # noqa: E402
from moeapap.problems.fronts import objective_box_from_front, sample_reference_front  # noqa: E402

DATA_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "moeapap" / "problems" / "data"

COUNTS = {2: 1001, 3: 1300}


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    boxes: dict[str, dict[str, list]] = {}
    for name in available_problems():
        problem = get_problem(name)
        front = sample_reference_front(name, COUNTS[problem.m])
        box = objective_box_from_front(name, front)
        boxes.setdefault(problem.suite, {})[name] = [list(pair) for pair in box.tolist()]
        path = DATA_DIR / f"{name.lower()}_front.txt"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# {name} m={problem.m}\n")
            for row in front:
                fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
        print(f"{name}: {front.shape[0]} front points -> {path.name}")
    for suite, entries in boxes.items():
        path = DATA_DIR / f"{suite.lower()}_boxes.json"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(entries, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"{suite}: boxes -> {path.name}")


if __name__ == "__main__":
    main()
