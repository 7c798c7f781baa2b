"""Seeded instance generation.

Random matrices are Q diag(lambda) Q* with Q from orthonormalized complex
Gaussians (Haar-like) and eigenvalues drawn from a log-uniform law.
Identical arguments produce bit-identical instances.

Per-task seeds are derived with a splitmix64 mix of (base_seed, index),
so parallel sweeps are reproducible and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .blocks import InstanceSet
from .linalg import hermitize

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """The splitmix64 finalizer; a stable 64-bit mixing function."""
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(base_seed: int, index: int) -> int:
    """Stable 64-bit per-task seed from (base_seed, task index)."""
    return splitmix64((base_seed & _MASK64) ^ splitmix64(index & _MASK64))


@dataclass(frozen=True)
class SpectrumLaw:
    """Log-uniform eigenvalue law on [lo, hi]."""

    lo: float = 0.1
    hi: float = 10.0

    def __post_init__(self):
        if not (self.lo > 0.0 and self.hi >= self.lo):
            raise errors.InvalidSpectrumLaw(f"need 0 < lo <= hi, got [{self.lo}, {self.hi}]")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.exp(rng.uniform(np.log(self.lo), np.log(self.hi), size=size))

    def to_dict(self) -> dict:
        return {"law": "loguniform", "lo": self.lo, "hi": self.hi}

    @classmethod
    def from_dict(cls, d: dict) -> "SpectrumLaw":
        if d.get("law", "loguniform") != "loguniform":
            raise errors.InvalidSpectrumLaw(f"unknown spectrum law {d.get('law')!r}")
        return cls(lo=float(d["lo"]), hi=float(d["hi"]))


DEFAULT_LAW = SpectrumLaw()


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_spd(n: int, rng: np.random.Generator, law: SpectrumLaw = DEFAULT_LAW) -> np.ndarray:
    """Random SPD matrix with eigenvalues from the spectrum law."""
    Q = haar_unitary(n, rng)
    lam = law.sample(rng, n)
    return hermitize((Q * lam) @ Q.conj().T)


def generate_instance(
    kind: str,
    n: int,
    m: int,
    seed: int,
    law: SpectrumLaw = DEFAULT_LAW,
) -> InstanceSet:
    """Deterministic instance from (kind, n, m, seed, law).

    generic: all 2m matrices independent.  commuting: A_i and B_i share
    one eigenbasis per pair, so they commute exactly up to round-off.
    """
    if kind not in ("generic", "commuting"):
        raise errors.ConfigError(f"unknown instance kind {kind!r}")
    if n < 1 or m < 1:
        raise errors.ConfigError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    rng = np.random.default_rng(seed & _MASK64)
    A, B = [], []
    for _ in range(m):
        if kind == "generic":
            A.append(random_spd(n, rng, law))
            B.append(random_spd(n, rng, law))
        else:
            Q = haar_unitary(n, rng)
            lam_a = law.sample(rng, n)
            lam_b = law.sample(rng, n)
            A.append(hermitize((Q * lam_a) @ Q.conj().T))
            B.append(hermitize((Q * lam_b) @ Q.conj().T))
    return InstanceSet(m=m, n=n, A=A, B=B, seed=int(seed), kind=kind)
