"""CEC 2009 unconstrained (UF) benchmark family, 30 decision variables.

UF1-7 have two objectives, UF8-10 three.  Index arithmetic below follows the
one-based variable numbering of the suite definition.
"""

from __future__ import annotations

import numpy as np

N_VARS = 30

# one-based variable indices split by parity (two-objective problems)
_J1 = np.arange(3, N_VARS + 1, 2)  # odd j >= 3
_J2 = np.arange(2, N_VARS + 1, 2)  # even j

# three-way split for the three-objective problems
_K1 = np.array([j for j in range(3, N_VARS + 1) if (j - 1) % 3 == 0])
_K2 = np.array([j for j in range(3, N_VARS + 1) if (j - 2) % 3 == 0])
_K3 = np.array([j for j in range(3, N_VARS + 1) if j % 3 == 0])


def _y_sin(X: np.ndarray, idx: np.ndarray) -> np.ndarray:
    x1 = X[:, :1]
    return X[:, idx - 1] - np.sin(6.0 * np.pi * x1 + idx * np.pi / N_VARS)


def uf1(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0] + 2.0 / _J1.size * (_y_sin(X, _J1) ** 2).sum(axis=1)
    f2 = 1.0 - np.sqrt(X[:, 0]) + 2.0 / _J2.size * (_y_sin(X, _J2) ** 2).sum(axis=1)
    return np.column_stack((f1, f2))


def uf2(X: np.ndarray) -> np.ndarray:
    x1 = X[:, :1]

    def y(idx, trig):
        amp = 0.3 * x1**2 * np.cos(24.0 * np.pi * x1 + 4.0 * idx * np.pi / N_VARS) + 0.6 * x1
        return X[:, idx - 1] - amp * trig(6.0 * np.pi * x1 + idx * np.pi / N_VARS)

    f1 = X[:, 0] + 2.0 / _J1.size * (y(_J1, np.cos) ** 2).sum(axis=1)
    f2 = 1.0 - np.sqrt(X[:, 0]) + 2.0 / _J2.size * (y(_J2, np.sin) ** 2).sum(axis=1)
    return np.column_stack((f1, f2))


def _multimodal_term(Y: np.ndarray, idx: np.ndarray) -> np.ndarray:
    # 4*sum(y^2) - 2*prod(cos(20*pi*y/sqrt(j))) + 2, scaled by 2/|J|
    s = 4.0 * (Y**2).sum(axis=1)
    p = np.cos(20.0 * np.pi * Y / np.sqrt(idx)).prod(axis=1)
    return 2.0 / idx.size * (s - 2.0 * p + 2.0)


def uf3(X: np.ndarray) -> np.ndarray:
    x1 = X[:, :1]

    def y(idx):
        expo = 0.5 * (1.0 + 3.0 * (idx - 2.0) / (N_VARS - 2.0))
        return X[:, idx - 1] - x1**expo

    f1 = X[:, 0] + _multimodal_term(y(_J1), _J1)
    f2 = 1.0 - np.sqrt(X[:, 0]) + _multimodal_term(y(_J2), _J2)
    return np.column_stack((f1, f2))


def uf4(X: np.ndarray) -> np.ndarray:
    def h(t):
        return np.abs(t) / (1.0 + np.exp(2.0 * np.abs(t)))

    f1 = X[:, 0] + 2.0 / _J1.size * h(_y_sin(X, _J1)).sum(axis=1)
    f2 = 1.0 - X[:, 0] ** 2 + 2.0 / _J2.size * h(_y_sin(X, _J2)).sum(axis=1)
    return np.column_stack((f1, f2))


def uf5(X: np.ndarray, N: int = 10, eps: float = 0.1) -> np.ndarray:
    def h(t):
        return 2.0 * t**2 - np.cos(4.0 * np.pi * t) + 1.0

    hump = (0.5 / N + eps) * np.abs(np.sin(2.0 * N * np.pi * X[:, 0]))
    f1 = X[:, 0] + hump + 2.0 / _J1.size * h(_y_sin(X, _J1)).sum(axis=1)
    f2 = 1.0 - X[:, 0] + hump + 2.0 / _J2.size * h(_y_sin(X, _J2)).sum(axis=1)
    return np.column_stack((f1, f2))


def uf6(X: np.ndarray, N: int = 2, eps: float = 0.1) -> np.ndarray:
    hump = np.maximum(0.0, 2.0 * (0.5 / N + eps) * np.sin(2.0 * N * np.pi * X[:, 0]))
    f1 = X[:, 0] + hump + _multimodal_term(_y_sin(X, _J1), _J1)
    f2 = 1.0 - X[:, 0] + hump + _multimodal_term(_y_sin(X, _J2), _J2)
    return np.column_stack((f1, f2))


def uf7(X: np.ndarray) -> np.ndarray:
    root = X[:, 0] ** 0.2
    f1 = root + 2.0 / _J1.size * (_y_sin(X, _J1) ** 2).sum(axis=1)
    f2 = 1.0 - root + 2.0 / _J2.size * (_y_sin(X, _J2) ** 2).sum(axis=1)
    return np.column_stack((f1, f2))


def _y3(X: np.ndarray, idx: np.ndarray) -> np.ndarray:
    x1 = X[:, :1]
    x2 = X[:, 1:2]
    return X[:, idx - 1] - 2.0 * x2 * np.sin(2.0 * np.pi * x1 + idx * np.pi / N_VARS)


def uf8(X: np.ndarray) -> np.ndarray:
    a = 0.5 * np.pi * X[:, 0]
    b = 0.5 * np.pi * X[:, 1]
    f1 = np.cos(a) * np.cos(b) + 2.0 / _K1.size * (_y3(X, _K1) ** 2).sum(axis=1)
    f2 = np.cos(a) * np.sin(b) + 2.0 / _K2.size * (_y3(X, _K2) ** 2).sum(axis=1)
    f3 = np.sin(a) + 2.0 / _K3.size * (_y3(X, _K3) ** 2).sum(axis=1)
    return np.column_stack((f1, f2, f3))


def uf9(X: np.ndarray, eps: float = 0.1) -> np.ndarray:
    x1 = X[:, 0]
    x2 = X[:, 1]
    hump = np.maximum(0.0, (1.0 + eps) * (1.0 - 4.0 * (2.0 * x1 - 1.0) ** 2))
    f1 = 0.5 * (hump + 2.0 * x1) * x2 + 2.0 / _K1.size * (_y3(X, _K1) ** 2).sum(axis=1)
    f2 = 0.5 * (hump - 2.0 * x1 + 2.0) * x2 + 2.0 / _K2.size * (_y3(X, _K2) ** 2).sum(axis=1)
    f3 = 1.0 - x2 + 2.0 / _K3.size * (_y3(X, _K3) ** 2).sum(axis=1)
    return np.column_stack((f1, f2, f3))


def uf10(X: np.ndarray) -> np.ndarray:
    def h(Y):
        return 4.0 * Y**2 - np.cos(8.0 * np.pi * Y) + 1.0

    a = 0.5 * np.pi * X[:, 0]
    b = 0.5 * np.pi * X[:, 1]
    f1 = np.cos(a) * np.cos(b) + 2.0 / _K1.size * h(_y3(X, _K1)).sum(axis=1)
    f2 = np.cos(a) * np.sin(b) + 2.0 / _K2.size * h(_y3(X, _K2)).sum(axis=1)
    f3 = np.sin(a) + 2.0 / _K3.size * h(_y3(X, _K3)).sum(axis=1)
    return np.column_stack((f1, f2, f3))
