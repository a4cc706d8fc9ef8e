"""One-dimensional field placement as an exact convex quadratic solve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .icicle import PatentIcicle
from .matrix import PaperMatrix


class LayoutError(ValueError):
    """Non-convex weight setting or malformed inputs."""


@dataclass(frozen=True)
class LayoutSolution:
    fields: tuple[str, ...]
    x: dict[str, float]
    ordering: tuple[str, ...]
    objective: float
    alpha: float
    beta: float
    gamma: float

    def to_dict(self) -> dict:
        return {
            "x": {f: self.x[f] for f in self.fields},
            "ordering": list(self.ordering),
            "objective": self.objective,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
        }


def centered_offsets(n: int) -> list[float]:
    """0, +1, -1, +2, -2, ... as unit-grid positions around the center."""
    out = []
    for i in range(n):
        step = (i + 1) // 2
        out.append(float(step if i % 2 == 1 else -step) if i else 0.0)
    return out


def target_order(matrix: PaperMatrix) -> dict[str, float]:
    """Most-cited field at the center, then alternating right and left."""
    if not matrix.columns:
        raise LayoutError("matrix has no columns")
    ranked = sorted(
        matrix.columns, key=lambda c: (-matrix.column_citations.get(c, 0), c)
    )
    offsets = centered_offsets(len(ranked))
    return {field: offsets[i] for i, field in enumerate(ranked)}


def patent_positions(icicle: PatentIcicle) -> dict[str, float]:
    """Group centers on the same unit grid, alphabetical icicle order."""
    groups = icicle.groups()
    n = len(groups)
    return {g: float(i - (n - 1) / 2.0) for i, g in enumerate(groups)}


def layout_objective(
    x: np.ndarray, w: np.ndarray, targets: np.ndarray, patents: np.ndarray,
    alpha: float, beta: float, gamma: float,
) -> float:
    pair = 0.0
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            pair += w[i, j] * (x[i] - x[j]) ** 2
    anchor = float(((x - targets) ** 2).sum())
    spread = float(((x[:, None] - patents[None, :]) ** 2).sum()) if len(patents) else 0.0
    return alpha * pair + beta * anchor + gamma * spread


def solve_layout(
    w: np.ndarray,
    targets: dict[str, float],
    patents: dict[str, float],
    alpha: float = 1.0,
    beta: float = 1.0,
    gamma: float = 1.0,
    fields: tuple[str, ...] | None = None,
) -> LayoutSolution:
    """Exact minimizer of
    alpha*sum_{i<j} w_ij (x_i-x_j)^2 + beta*sum_i (x_i-t_i)^2
    + gamma*sum_i sum_j (x_i-p_j)^2
    via the stationarity system (alpha*L + (beta + gamma*m) I) x = beta*t
    + gamma*(sum_j p_j) 1, where L is the Laplacian of w and m = |patents|.
    """
    if alpha < 0 or beta < 0 or gamma < 0:
        raise LayoutError("weights must be nonnegative")
    ordered_fields = fields if fields is not None else tuple(sorted(targets))
    n = len(ordered_fields)
    if n == 0:
        raise LayoutError("no fields to place")
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (n, n):
        raise LayoutError(f"similarity matrix must be {n}x{n}, got {w.shape}")
    if (w < 0).any():
        raise LayoutError("similarity weights must be nonnegative")

    m = len(patents)
    if beta == 0.0 and (gamma == 0.0 or m == 0):
        # Without an anchoring term the objective is translation invariant
        # (or identically zero) and has no unique minimizer.
        raise LayoutError("need beta > 0, or gamma > 0 with patent positions")

    t = np.array([targets[f] for f in ordered_fields], dtype=np.float64)
    p = np.array([patents[g] for g in sorted(patents)], dtype=np.float64)

    sym = (w + w.T) / 2.0
    np.fill_diagonal(sym, 0.0)
    laplacian = np.diag(sym.sum(axis=1)) - sym
    system = alpha * laplacian + (beta + gamma * m) * np.eye(n)
    rhs = beta * t + gamma * p.sum() * np.ones(n)
    x = np.linalg.solve(system, rhs)

    ordering = tuple(
        sorted(ordered_fields, key=lambda f: (x[ordered_fields.index(f)], f))
    )
    objective = layout_objective(x, sym, t, p, alpha, beta, gamma)
    return LayoutSolution(
        fields=ordered_fields,
        x={f: float(x[i]) for i, f in enumerate(ordered_fields)},
        ordering=ordering,
        objective=float(objective),
        alpha=alpha,
        beta=beta,
        gamma=gamma,
    )
