"""ZDT benchmark family (two objectives).

ZDT1-4 and ZDT6 are real-coded; ZDT5 is the binary member of the family,
encoded as one 30-bit substring followed by ten 5-bit substrings.  Batch
evaluators take an (r, n) array and return an (r, 2) array.
"""

from __future__ import annotations

import numpy as np

ZDT5_BIT_LAYOUT = (30,) + (5,) * 10
ZDT5_TOTAL_BITS = sum(ZDT5_BIT_LAYOUT)


def zdt1(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.column_stack((f1, f2))


def zdt2(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)
    f2 = g * (1.0 - (f1 / g) ** 2)
    return np.column_stack((f1, f2))


def zdt3(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g) - f1 / g * np.sin(10.0 * np.pi * f1))
    return np.column_stack((f1, f2))


def zdt4(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    tail = X[:, 1:]
    g = 1.0 + 10.0 * tail.shape[1] + (tail**2 - 10.0 * np.cos(4.0 * np.pi * tail)).sum(axis=1)
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.column_stack((f1, f2))


def zdt6(X: np.ndarray) -> np.ndarray:
    f1 = 1.0 - np.exp(-4.0 * X[:, 0]) * np.sin(6.0 * np.pi * X[:, 0]) ** 6
    g = 1.0 + 9.0 * (X[:, 1:].sum(axis=1) / (X.shape[1] - 1)) ** 0.25
    f2 = g * (1.0 - (f1 / g) ** 2)
    return np.column_stack((f1, f2))


def zdt5_bits(bits: np.ndarray) -> np.ndarray:
    """Evaluate ZDT5 on an (r, 80) array of 0/1 genes."""
    bits = np.asarray(bits)
    if bits.shape[1] != ZDT5_TOTAL_BITS:
        raise ValueError(f"ZDT5 expects {ZDT5_TOTAL_BITS} bits, got {bits.shape[1]}")
    u1 = bits[:, :30].sum(axis=1)
    f1 = 1.0 + u1
    g = np.zeros(bits.shape[0])
    pos = 30
    for width in ZDT5_BIT_LAYOUT[1:]:
        u = bits[:, pos:pos + width].sum(axis=1)
        g += np.where(u < width, 2.0 + u, 1.0)
        pos += width
    f2 = g / f1
    return np.column_stack((f1, f2))


def zdt5(X: np.ndarray) -> np.ndarray:
    """Relaxed real-coded ZDT5: one gene per bit, thresholded at 0.5."""
    return zdt5_bits(np.asarray(X) >= 0.5)
