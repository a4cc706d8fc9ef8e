"""Two-layer graph convolutional classifier with an explicit backward pass.

Forward rule: Z = softmax(A_hat @ relu(A_hat @ X @ W0) @ W1), two output
classes, dropout on the inputs and the hidden activations during training.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from .evaluate import auc

ADAM = "adam"
GD = "gd"

_CLAMP = 1e-12


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    learning_rate: float = 0.01
    dropout: float = 0.5
    hidden: int = 16
    weight_decay: float = 5e-4
    optimizer: str = ADAM
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must be in [0, 1)")
        if self.hidden < 1:
            raise ValueError("hidden must be >= 1")
        if self.optimizer not in (ADAM, GD):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "dropout": self.dropout,
            "hidden": self.hidden,
            "weight_decay": self.weight_decay,
            "optimizer": self.optimizer,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "TrainConfig":
        return cls(**raw)


@dataclass
class GcnModel:
    W0: np.ndarray
    W1: np.ndarray
    config: TrainConfig
    history: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "W0": [[float(v) for v in row] for row in self.W0],
            "W1": [[float(v) for v in row] for row in self.W1],
            "history": self.history,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "GcnModel":
        return cls(
            W0=np.array(raw["W0"], dtype=np.float64),
            W1=np.array(raw["W1"], dtype=np.float64),
            config=TrainConfig.from_dict(raw["config"]),
            history=list(raw.get("history", [])),
        )


def glorot(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    limit = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-limit, limit, size=(rows, cols))


def init_weights(
    n_features: int, hidden: int, n_classes: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    return glorot(n_features, hidden, rng), glorot(hidden, n_classes, rng)


def softmax_rows(S: np.ndarray) -> np.ndarray:
    shifted = S - S.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _dropout_mask(shape, rate: float, rng: np.random.Generator) -> np.ndarray:
    # Inverted scaling: surviving units are divided by the keep probability
    # so eval mode needs no rescaling.
    keep = 1.0 - rate
    return (rng.random(shape) < keep).astype(np.float64) / keep


def forward(
    X: np.ndarray,
    a_hat: sp.spmatrix,
    W0: np.ndarray,
    W1: np.ndarray,
    mode: str = "eval",
    rng: np.random.Generator | None = None,
    dropout: float = 0.5,
) -> np.ndarray:
    if X.shape[1] != W0.shape[0] or W0.shape[1] != W1.shape[0]:
        raise ValueError("inconsistent shapes")
    if mode == "train" and dropout > 0.0:
        if rng is None:
            raise ValueError("train mode needs an rng for dropout")
        X = X * _dropout_mask(X.shape, dropout, rng)
    H = np.maximum(a_hat @ X @ W0, 0.0)
    if mode == "train" and dropout > 0.0:
        H = H * _dropout_mask(H.shape, dropout, rng)
    return softmax_rows(a_hat @ (H @ W1))


def loss_value(Z: np.ndarray, Y: np.ndarray, mask: np.ndarray) -> float:
    if len(mask) == 0:
        raise ValueError("empty mask")
    clamped = np.maximum(Z[mask], _CLAMP)
    return float(-(Y[mask] * np.log(clamped)).sum())


def loss_and_grads(
    X: np.ndarray,
    a_hat: sp.spmatrix,
    Y: np.ndarray,
    mask: np.ndarray,
    W0: np.ndarray,
    W1: np.ndarray,
    dropout: float = 0.0,
    rng: np.random.Generator | None = None,
    weight_decay: float = 0.0,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Cross-entropy over the masked rows and its gradients w.r.t. W0, W1.

    The loss term excludes the weight decay penalty; decay is added to the
    W0 gradient only, mirroring the usual first-layer regularization.
    """
    if len(mask) == 0:
        raise ValueError("empty mask")
    if dropout > 0.0:
        if rng is None:
            raise ValueError("dropout needs an rng")
        Xd = X * _dropout_mask(X.shape, dropout, rng)
    else:
        Xd = X
    U = a_hat @ Xd @ W0
    H = np.maximum(U, 0.0)
    if dropout > 0.0:
        hidden_mask = _dropout_mask(H.shape, dropout, rng)
        Hd = H * hidden_mask
    else:
        hidden_mask = None
        Hd = H
    Z = softmax_rows(a_hat @ (Hd @ W1))
    loss = loss_value(Z, Y, mask)

    G = np.zeros_like(Z)
    G[mask] = Z[mask] - Y[mask]
    # a_hat is symmetric, so propagating through it transposes to itself.
    AG = a_hat @ G
    grad_W1 = Hd.T @ AG
    dHd = AG @ W1.T
    dH = dHd * hidden_mask if hidden_mask is not None else dHd
    dU = dH * (U > 0.0)
    grad_W0 = (a_hat @ Xd).T @ dU
    if weight_decay:
        grad_W0 = grad_W0 + weight_decay * W0
    return loss, grad_W0, grad_W1


@dataclass
class _AdamState:
    m: np.ndarray
    v: np.ndarray
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def step(self, grad: np.ndarray, t: int, lr: float) -> np.ndarray:
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad * grad
        m_hat = self.m / (1 - self.beta1**t)
        v_hat = self.v / (1 - self.beta2**t)
        return lr * m_hat / (np.sqrt(v_hat) + self.eps)


def train(
    X: np.ndarray,
    a_hat: sp.spmatrix,
    Y: np.ndarray,
    splits,
    config: TrainConfig | None = None,
) -> GcnModel:
    """Full-batch training; returns the epoch snapshot with the best
    validation AUC (ties keep the earliest, no valid AUC keeps the last)."""
    config = config or TrainConfig()
    train_idx = np.asarray(splits.train, dtype=np.intp)
    val_idx = np.asarray(splits.val, dtype=np.intp)
    if len(train_idx) == 0:
        raise ValueError("empty train split")
    train_labels = Y[train_idx, 1]
    if len(set(train_labels.tolist())) < 2:
        warnings.warn("single-class train labels; AUC-based selection degenerates")

    rng = np.random.default_rng(config.seed)
    W0, W1 = init_weights(X.shape[1], config.hidden, Y.shape[1], rng)
    best = (W0.copy(), W1.copy())
    best_auc = -np.inf
    history: list[dict] = []

    adam0 = _AdamState(m=np.zeros_like(W0), v=np.zeros_like(W0))
    adam1 = _AdamState(m=np.zeros_like(W1), v=np.zeros_like(W1))

    for epoch in range(1, config.epochs + 1):
        _, g0, g1 = loss_and_grads(
            X,
            a_hat,
            Y,
            train_idx,
            W0,
            W1,
            dropout=config.dropout,
            rng=rng,
            weight_decay=config.weight_decay,
        )
        if config.optimizer == ADAM:
            W0 = W0 - adam0.step(g0, epoch, config.learning_rate)
            W1 = W1 - adam1.step(g1, epoch, config.learning_rate)
        else:
            W0 = W0 - config.learning_rate * g0
            W1 = W1 - config.learning_rate * g1

        Z = forward(X, a_hat, W0, W1, mode="eval")
        epoch_loss = loss_value(Z, Y, train_idx)
        val_auc = (
            auc(Z[val_idx, 1], Y[val_idx, 1].astype(int)) if len(val_idx) else None
        )
        history.append({"epoch": epoch, "loss": epoch_loss, "val_auc": val_auc})
        if val_auc is not None and val_auc > best_auc:
            best_auc = val_auc
            best = (W0.copy(), W1.copy())

    if best_auc == -np.inf and config.epochs > 0:
        best = (W0, W1)
    return GcnModel(W0=best[0], W1=best[1], config=config, history=history)


def predict_proba(model: GcnModel, X: np.ndarray, a_hat: sp.spmatrix) -> np.ndarray:
    """Positive-class probability per node (class order: [negative, positive])."""
    return forward(X, a_hat, model.W0, model.W1, mode="eval")[:, 1]


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
    return float((np.abs(a - b) / denom).max())


def numeric_grads(
    X: np.ndarray,
    a_hat: sp.spmatrix,
    Y: np.ndarray,
    mask: np.ndarray,
    W0: np.ndarray,
    W1: np.ndarray,
    h: float = 1e-5,
) -> tuple[np.ndarray, np.ndarray]:
    """Central finite differences of the (dropout-free) loss."""

    def f(w0: np.ndarray, w1: np.ndarray) -> float:
        return loss_value(forward(X, a_hat, w0, w1, mode="eval"), Y, mask)

    grads = []
    for which, W in ((0, W0), (1, W1)):
        g = np.zeros_like(W)
        for idx in np.ndindex(W.shape):
            bumped = W.copy()
            bumped[idx] = W[idx] + h
            hi = f(bumped, W1) if which == 0 else f(W0, bumped)
            bumped[idx] = W[idx] - h
            lo = f(bumped, W1) if which == 0 else f(W0, bumped)
            g[idx] = (hi - lo) / (2 * h)
        grads.append(g)
    return grads[0], grads[1]


def grad_check(
    X: np.ndarray,
    a_hat: sp.spmatrix,
    Y: np.ndarray,
    mask: np.ndarray,
    W0: np.ndarray,
    W1: np.ndarray,
    h: float = 1e-5,
) -> float:
    """Max relative error between analytic and central-difference gradients,
    dropout disabled."""
    _, a0, a1 = loss_and_grads(X, a_hat, Y, mask, W0, W1, dropout=0.0)
    n0, n1 = numeric_grads(X, a_hat, Y, mask, W0, W1, h=h)
    return max(relative_error(a0, n0), relative_error(a1, n1))
