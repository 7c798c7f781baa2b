"""The block matrix Z with blocks B_i^{1/2} (sum_k A_k) B_j^{1/2}, its
rank-revealing factorizations, and the reduced n x n core carrying its
nonzero spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import errors
from .linalg import hermitian_eig, hermitize, matrix_power, require_spd

COMMUTING_RTOL = 1e-12


@dataclass
class InstanceSet:
    """One experiment instance: m pairs of n x n positive definite matrices.

    kind is 'generic' or 'commuting'; commuting instances satisfy
    A_i B_i = B_i A_i pairwise (shared eigenbasis by construction).
    """

    m: int
    n: int
    A: list = field(repr=False)
    B: list = field(repr=False)
    seed: int = 0
    kind: str = "generic"

    def validate(self) -> "InstanceSet":
        if self.kind not in ("generic", "commuting"):
            raise errors.ConfigError(f"unknown instance kind {self.kind!r}")
        if len(self.A) != self.m or len(self.B) != self.m:
            raise errors.DimensionMismatch(
                f"expected {self.m} pairs, got {len(self.A)}/{len(self.B)}"
            )
        for X in (*self.A, *self.B):
            X = require_spd(X)
            if X.shape != (self.n, self.n):
                raise errors.DimensionMismatch(f"expected {self.n}x{self.n}, got {X.shape}")
        if self.kind == "commuting":
            for Ai, Bi in zip(self.A, self.B):
                defect = np.linalg.norm(Ai @ Bi - Bi @ Ai)
                scale = np.linalg.norm(Ai) * np.linalg.norm(Bi)
                if defect > COMMUTING_RTOL * scale:
                    raise errors.NotCommuting(
                        f"pair commutator norm {defect:.3e} exceeds {COMMUTING_RTOL:.1e} * {scale:.3e}"
                    )
        return self

    def sum_A(self) -> np.ndarray:
        return hermitize(sum(self.A))

    def sum_B(self) -> np.ndarray:
        return hermitize(sum(self.B))


def build_Z(inst: InstanceSet) -> np.ndarray:
    """The mn x mn Hermitian PSD block matrix with blocks
    B_i^{1/2} (sum_k A_k) B_j^{1/2}."""
    m, n = inst.m, inst.n
    sA = inst.sum_A()
    Bh = [matrix_power(Bi, 0.5) for Bi in inst.B]
    Z = np.empty((m * n, m * n), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            Z[i * n:(i + 1) * n, j * n:(j + 1) * n] = Bh[i] @ sA @ Bh[j]
    return hermitize(Z)


def build_Y(inst: InstanceSet) -> np.ndarray:
    """The mn x mn factor with Y Y* = Z; block (i, j) is B_i^{1/2} A_j^{1/2}."""
    m, n = inst.m, inst.n
    Ah = [matrix_power(Ai, 0.5) for Ai in inst.A]
    Bh = [matrix_power(Bi, 0.5) for Bi in inst.B]
    Y = np.empty((m * n, m * n), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            Y[i * n:(i + 1) * n, j * n:(j + 1) * n] = Bh[i] @ Ah[j]
    return Y


def reduced_core(inst: InstanceSet) -> np.ndarray:
    """(sum A)^{1/2} (sum B) (sum A)^{1/2}: the n x n SPD matrix unitarily
    equivalent to Z's nonzero part."""
    sAh = matrix_power(inst.sum_A(), 0.5)
    return hermitize(sAh @ inst.sum_B() @ sAh)


@dataclass(frozen=True)
class EquivalenceReport:
    factorization_defect: float
    spectrum_defect: float
    passed: bool


def verify_equivalences(inst: InstanceSet, tol: float = 1e-10) -> EquivalenceReport:
    """Check Z = Y Y* and spec(Z) = spec(reduced core) union {0}."""
    Z = build_Z(inst)
    Y = build_Y(inst)
    z_norm = np.linalg.norm(Z)
    fdef = float(np.linalg.norm(Z - Y @ Y.conj().T) / max(z_norm, np.finfo(float).tiny))

    wZ = hermitian_eig(Z).eigenvalues
    w_core = hermitian_eig(reduced_core(inst)).eigenvalues
    padded = np.concatenate([w_core, np.zeros((inst.m - 1) * inst.n)])
    padded = np.sort(padded)[::-1]
    lam_max = max(float(wZ[0]), np.finfo(float).tiny)
    sdef = float(np.abs(wZ - padded).max() / lam_max)

    return EquivalenceReport(
        factorization_defect=fdef,
        spectrum_defect=sdef,
        passed=fdef <= tol and sdef <= tol,
    )
