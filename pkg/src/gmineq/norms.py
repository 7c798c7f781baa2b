"""Unitarily invariant norms: singular values, Ky Fan k-norms, Schatten
p-norms, and the Fan-dominance comparator.

Ordering in every unitarily invariant norm is equivalent to ordering in
every Ky Fan norm, so `ky_fan_dominance` is the operational stand-in for
"for all unitarily invariant norms".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import errors

_NAMED = ("trace", "operator", "frobenius")


@dataclass(frozen=True)
class NormSpec:
    """Selector for one unitarily invariant norm."""

    variant: str           # kyfan | schatten | trace | operator | frobenius
    k: int | None = None   # kyfan only
    p: float | None = None  # schatten only; math.inf allowed

    def __post_init__(self):
        if self.variant == "kyfan":
            if self.k is None or self.k < 1:
                raise errors.InvalidSpec(f"Ky Fan k must be >= 1, got {self.k}")
        elif self.variant == "schatten":
            if self.p is None or self.p < 1.0:
                raise errors.InvalidSpec(f"Schatten p must be >= 1, got {self.p}")
        elif self.variant not in _NAMED:
            raise errors.InvalidSpec(f"unknown norm variant {self.variant!r}")

    @classmethod
    def ky_fan(cls, k: int) -> "NormSpec":
        return cls("kyfan", k=int(k))

    @classmethod
    def schatten(cls, p: float) -> "NormSpec":
        return cls("schatten", p=float(p))

    @classmethod
    def trace(cls) -> "NormSpec":
        return cls("trace")

    @classmethod
    def operator(cls) -> "NormSpec":
        return cls("operator")

    @classmethod
    def frobenius(cls) -> "NormSpec":
        return cls("frobenius")

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Parse labels like 'kyfan:3', 'schatten:2', 'schatten:inf', 'trace'."""
        text = text.strip().lower()
        if text in _NAMED:
            return cls(text)
        if ":" in text:
            head, arg = text.split(":", 1)
            if head == "kyfan":
                return cls.ky_fan(int(arg))
            if head == "schatten":
                return cls.schatten(math.inf if arg == "inf" else float(arg))
        raise errors.InvalidSpec(f"cannot parse norm spec {text!r}")

    @property
    def label(self) -> str:
        if self.variant == "kyfan":
            return f"kyfan:{self.k}"
        if self.variant == "schatten":
            p = "inf" if math.isinf(self.p) else f"{self.p:g}"
            return f"schatten:{p}"
        return self.variant

    @property
    def family(self) -> str:
        """Norm class used for summary grouping (all Ky Fan k collapse)."""
        return "kyfan" if self.variant == "kyfan" else self.label


def singular_values(M) -> np.ndarray:
    """Descending singular values of M."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise errors.DimensionMismatch(f"expected a 2-d matrix, got shape {A.shape}")
    try:
        return np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise errors.NonConvergence(str(exc)) from exc


def norm_from_sv(sv: np.ndarray, spec: NormSpec, pad: bool = False) -> float:
    """Evaluate a norm from a descending singular value list.

    With pad=True a Ky Fan k beyond the list length is evaluated under the
    direct-sum convention ||A|| = ||A (+) 0|| (missing singular values are
    zeros); this is how terms of different sizes are compared in one chain.
    """
    sv = np.asarray(sv, dtype=np.float64)
    if spec.variant == "kyfan":
        if spec.k > sv.size and not pad:
            raise errors.InvalidSpec(f"Ky Fan k={spec.k} out of range for {sv.size} singular values")
        return float(sv[: spec.k].sum())
    if spec.variant == "schatten":
        if math.isinf(spec.p):
            return float(sv[0]) if sv.size else 0.0
        return float((sv ** spec.p).sum() ** (1.0 / spec.p))
    if spec.variant == "trace":
        return float(sv.sum())
    if spec.variant == "operator":
        return float(sv[0]) if sv.size else 0.0
    # frobenius
    return float(np.sqrt((sv ** 2).sum()))


def norm_eval(M, spec: NormSpec) -> float:
    """Evaluate the selected norm on M; Ky Fan k must fit the matrix."""
    return norm_from_sv(singular_values(M), spec, pad=False)


@dataclass(frozen=True)
class DominanceReport:
    dominated: bool
    worst_k: int
    worst_margin: float


def ky_fan_dominance(X, Y, tol: float = 1e-10) -> DominanceReport:
    """Check KyFan_k(X) <= KyFan_k(Y) for every k = 1..n.

    By the Fan dominance principle this decides ordering in every
    unitarily invariant norm.  worst_margin is the minimum over k of
    KyFan_k(Y) - KyFan_k(X), unscaled.
    """
    sx = singular_values(X)
    sy = singular_values(Y)
    if sx.shape != sy.shape:
        raise errors.DimensionMismatch(f"size mismatch: {sx.size} vs {sy.size}")
    margins = np.cumsum(sy) - np.cumsum(sx)
    worst = int(np.argmin(margins))
    scale = max(1.0, float(sy.sum()))
    return DominanceReport(
        dominated=bool(margins.min() >= -tol * scale),
        worst_k=worst + 1,
        worst_margin=float(margins[worst]),
    )
