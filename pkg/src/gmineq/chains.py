"""Inequality-chain evaluators.

Each evaluator computes the singular values of every term of a chain once,
then reports margins under any requested norm.  All chain terms are
Hermitian PSD (except the commuting product right side), so singular
values come from eigenvalues directly.

Terms of different sizes (the block matrix Z is mn x mn, the outer terms
n x n) are compared under the direct-sum convention ||A|| = ||A (+) 0||:
Ky Fan norms treat missing singular values as zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import errors
from .blocks import InstanceSet, build_Z
from .linalg import hermitian_eig, hermitize, matrix_power
from .means import t_geometric_mean
from .norms import NormSpec, norm_from_sv, singular_values

DEFAULT_TOL_REL = 1e-8
DEFAULT_CONDITION_CAP = 1e8


@dataclass(frozen=True)
class ChainParams:
    """Exponent parameters (s, r, p) and mean weight t."""

    s: float = 2.0
    r: float = 1.0
    p: float = 1.0
    t: float = 0.5

    def as_dict(self) -> dict:
        return {"s": self.s, "r": self.r, "p": self.p, "t": self.t}


@dataclass(frozen=True)
class ChainReport:
    """Evaluated left/middle/right norm values for one chain at one norm."""

    chain_id: str
    instance_seed: int
    n: int
    m: int
    params: ChainParams
    norm: NormSpec
    lhs: float
    mid: float | None
    rhs: float
    margins: tuple
    passed: bool
    status: str          # proven | conjectured
    gated: bool
    condition_max: float

    @property
    def min_margin(self) -> float:
        return min(self.margins)

    @property
    def scale(self) -> float:
        return max(1.0, self.rhs)


@dataclass(frozen=True)
class ChainTerms:
    """Singular values of every chain term, shared across norm evaluations."""

    chain_id: str
    lhs_sv: np.ndarray
    rhs_sv: np.ndarray
    mid_sv: np.ndarray | None = None
    status: str = "proven"
    condition_max: float = 1.0

    @property
    def max_dim(self) -> int:
        dims = [self.lhs_sv.size, self.rhs_sv.size]
        if self.mid_sv is not None:
            dims.append(self.mid_sv.size)
        return max(dims)


def _psd_sv(H: np.ndarray) -> np.ndarray:
    """Descending eigenvalues of a Hermitian PSD matrix, negatives clipped."""
    w = hermitian_eig(hermitize(H)).eigenvalues
    return np.clip(w, 0.0, None)


def _spectrum_power(w: np.ndarray, x: float) -> np.ndarray:
    """lambda**x on a clipped PSD spectrum, returned descending."""
    lam = np.clip(w, 0.0, None)
    lam[lam <= 1e-12 * lam.max(initial=0.0)] = 0.0
    return np.sort(lam ** x)[::-1]


def condition_max(inst: InstanceSet) -> float:
    """Largest condition number over the inputs and both sums."""
    mats = [*inst.A, *inst.B, inst.sum_A(), inst.sum_B()]
    worst = 1.0
    for H in mats:
        w = hermitian_eig(H).eigenvalues
        lo, hi = float(w[-1]), float(w[0])
        worst = max(worst, math.inf if lo <= 0.0 else hi / lo)
    return worst


def _psd_power(H: np.ndarray, x: float) -> np.ndarray:
    """H**x for a matrix that is PSD by construction; round-off negatives in
    the spectrum are clipped to zero instead of raising."""
    eig = hermitian_eig(hermitize(H))
    w = np.clip(eig.eigenvalues, 0.0, None) ** x
    return hermitize((eig.vectors * w) @ eig.vectors.conj().T)


def _mean_power_sum(inst: InstanceSet, s: float, t: float, r: float) -> np.ndarray:
    """sum_i (A_i^s #_t B_i^s)^r."""
    acc = np.zeros((inst.n, inst.n), dtype=np.complex128)
    for Ai, Bi in zip(inst.A, inst.B):
        G = t_geometric_mean(matrix_power(Ai, s), matrix_power(Bi, s), t)
        acc += _psd_power(G, r)
    return hermitize(acc)


def _sandwich_sv(sA, sB, a_exp: float, b_exp: float, inv_p: float) -> np.ndarray:
    """Singular values of ((sum A)^a (sum B)^b (sum A)^a)^{inv_p}."""
    left = matrix_power(sA, a_exp)
    inner = hermitize(left @ matrix_power(sB, b_exp) @ left)
    return _spectrum_power(hermitian_eig(inner).eigenvalues, inv_p)


def main_chain_terms(inst: InstanceSet, params: ChainParams) -> ChainTerms:
    """Terms of the three-part chain: sum of mean powers, Z^{sr/2}, and the
    sandwich of sums.  Hypotheses: s >= 2, r >= 1, p > 0, rp >= 1."""
    s, r, p = params.s, params.r, params.p
    if not (s >= 2.0 and r >= 1.0 and p > 0.0 and r * p >= 1.0):
        raise errors.HypothesisViolation(
            f"main chain requires s>=2, r>=1, p>0, rp>=1; got s={s}, r={r}, p={p}"
        )
    lhs_sv = _psd_sv(_mean_power_sum(inst, s, 0.5, r))
    wZ = hermitian_eig(build_Z(inst)).eigenvalues
    mid_sv = _spectrum_power(wZ, s * r / 2.0)
    rhs_sv = _sandwich_sv(inst.sum_A(), inst.sum_B(), s * r * p / 4.0, s * r * p / 2.0, 1.0 / p)
    return ChainTerms(
        chain_id="main",
        lhs_sv=lhs_sv,
        mid_sv=mid_sv,
        rhs_sv=rhs_sv,
        status="proven",
        condition_max=condition_max(inst),
    )


def geo_z_terms(inst: InstanceSet, s: float) -> ChainTerms:
    """Left step alone: ||sum A_i^s # B_i^s|| <= ||Z^{s/2}||, valid for s >= 1."""
    if not s >= 1.0:
        raise errors.HypothesisViolation(f"geo-z step requires s >= 1, got s={s}")
    lhs_sv = _psd_sv(_mean_power_sum(inst, s, 0.5, 1.0))
    wZ = hermitian_eig(build_Z(inst)).eigenvalues
    rhs_sv = _spectrum_power(wZ, s / 2.0)
    return ChainTerms(
        chain_id="geo-z",
        lhs_sv=lhs_sv,
        rhs_sv=rhs_sv,
        status="proven",
        condition_max=condition_max(inst),
    )


def t_chain_status(params: ChainParams) -> str:
    """Proven parameter regimes of the weighted chain; everything else is
    the open conjecture region."""
    s, r, p, t = params.s, params.r, params.p, params.t
    if s == 1.0 and r >= 1.0 and p > 0.0:
        return "proven"
    if s >= 2.0 and t == 0.5 and r >= 1.0 and r * p >= 1.0:
        return "proven"
    if s == 2.0 and t == 0.5 and r * p >= 1.0:
        return "proven"
    return "conjectured"


def t_chain_terms(inst: InstanceSet, params: ChainParams) -> ChainTerms:
    """Weighted two-term chain: ||sum (A_i^s #_t B_i^s)^r|| against the
    sandwich with exponents (1-t)srp/2 and tsrp.  Conjectured-regime
    negative margins are recorded, never raised."""
    s, r, p, t = params.s, params.r, params.p, params.t
    if not 0.0 <= t <= 1.0:
        raise errors.HypothesisViolation(f"t must lie in [0, 1], got {t}")
    if s <= 0.0 or r <= 0.0 or p <= 0.0:
        raise errors.HypothesisViolation(f"need s, r, p > 0; got s={s}, r={r}, p={p}")
    lhs_sv = _psd_sv(_mean_power_sum(inst, s, t, r))
    rhs_sv = _sandwich_sv(
        inst.sum_A(), inst.sum_B(), (1.0 - t) * s * r * p / 2.0, t * s * r * p, 1.0 / p
    )
    return ChainTerms(
        chain_id="t-chain",
        lhs_sv=lhs_sv,
        rhs_sv=rhs_sv,
        status=t_chain_status(params),
        condition_max=condition_max(inst),
    )


def commuting_terms(inst: InstanceSet, variant: str) -> ChainTerms:
    """Commuting-pair chains: ||sum A_i B_i|| <= ||(sum A_i^{1/2} B_i^{1/2})^2||
    <= ||(sum A)(sum B)|| (product) or the symmetrized right side."""
    if variant not in ("product", "symmetrized"):
        raise errors.ConfigError(f"unknown commuting variant {variant!r}")
    if inst.kind != "commuting":
        raise errors.NotCommuting(f"instance kind is {inst.kind!r}, need 'commuting'")
    inst.validate()
    lhs = np.zeros((inst.n, inst.n), dtype=np.complex128)
    mid_root = np.zeros((inst.n, inst.n), dtype=np.complex128)
    for Ai, Bi in zip(inst.A, inst.B):
        lhs += Ai @ Bi
        mid_root += matrix_power(Ai, 0.5) @ matrix_power(Bi, 0.5)
    mid_root = hermitize(mid_root)
    lhs_sv = _psd_sv(lhs)
    mid_sv = _spectrum_power(hermitian_eig(mid_root).eigenvalues, 2.0)
    sA, sB = inst.sum_A(), inst.sum_B()
    if variant == "product":
        rhs_sv = singular_values(sA @ sB)
    else:
        rhs_sv = _sandwich_sv(sA, sB, 0.5, 1.0, 1.0)
    return ChainTerms(
        chain_id=f"commuting-{variant}",
        lhs_sv=lhs_sv,
        mid_sv=mid_sv,
        rhs_sv=rhs_sv,
        status="proven",
        condition_max=condition_max(inst),
    )


def report_from_terms(
    terms: ChainTerms,
    inst: InstanceSet,
    params: ChainParams,
    norm: NormSpec,
    tol_rel: float = DEFAULT_TOL_REL,
    condition_cap: float = DEFAULT_CONDITION_CAP,
) -> ChainReport:
    """Evaluate one norm on precomputed chain terms."""
    lhs = norm_from_sv(terms.lhs_sv, norm, pad=True)
    rhs = norm_from_sv(terms.rhs_sv, norm, pad=True)
    if terms.mid_sv is not None:
        mid = norm_from_sv(terms.mid_sv, norm, pad=True)
        margins = (mid - lhs, rhs - mid)
    else:
        mid = None
        margins = (rhs - lhs,)
    scale = max(1.0, rhs)
    return ChainReport(
        chain_id=terms.chain_id,
        instance_seed=inst.seed,
        n=inst.n,
        m=inst.m,
        params=params,
        norm=norm,
        lhs=lhs,
        mid=mid,
        rhs=rhs,
        margins=margins,
        passed=bool(min(margins) >= -tol_rel * scale),
        status=terms.status,
        gated=bool(terms.condition_max > condition_cap),
        condition_max=terms.condition_max,
    )


def expand_norm_tokens(tokens, max_dim: int) -> list:
    """Expand norm tokens; 'kyfan:all' becomes KyFan 1..max_dim."""
    specs = []
    for tok in tokens:
        if isinstance(tok, NormSpec):
            specs.append(tok)
        elif tok.strip().lower() == "kyfan:all":
            specs.extend(NormSpec.ky_fan(k) for k in range(1, max_dim + 1))
        else:
            specs.append(NormSpec.parse(tok))
    return specs


def _reports(terms, inst, params, norms, tol_rel, condition_cap):
    specs = expand_norm_tokens(norms, terms.max_dim)
    return [
        report_from_terms(terms, inst, params, spec, tol_rel, condition_cap)
        for spec in specs
    ]


def eval_main_chain(
    inst: InstanceSet,
    params: ChainParams,
    norm: NormSpec,
    tol_rel: float = DEFAULT_TOL_REL,
    condition_cap: float = DEFAULT_CONDITION_CAP,
) -> ChainReport:
    return report_from_terms(main_chain_terms(inst, params), inst, params, norm, tol_rel, condition_cap)


def eval_geo_vs_Z(
    inst: InstanceSet,
    s: float,
    norm: NormSpec,
    tol_rel: float = DEFAULT_TOL_REL,
    condition_cap: float = DEFAULT_CONDITION_CAP,
) -> ChainReport:
    params = ChainParams(s=s, r=1.0, p=1.0, t=0.5)
    return report_from_terms(geo_z_terms(inst, s), inst, params, norm, tol_rel, condition_cap)


def eval_t_chain(
    inst: InstanceSet,
    params: ChainParams,
    norm: NormSpec,
    tol_rel: float = DEFAULT_TOL_REL,
    condition_cap: float = DEFAULT_CONDITION_CAP,
) -> ChainReport:
    return report_from_terms(t_chain_terms(inst, params), inst, params, norm, tol_rel, condition_cap)


def eval_commuting_chain(
    inst: InstanceSet,
    variant: str,
    norm: NormSpec,
    tol_rel: float = DEFAULT_TOL_REL,
    condition_cap: float = DEFAULT_CONDITION_CAP,
) -> ChainReport:
    params = ChainParams(s=1.0, r=1.0, p=1.0, t=0.5)
    return report_from_terms(commuting_terms(inst, variant), inst, params, norm, tol_rel, condition_cap)
