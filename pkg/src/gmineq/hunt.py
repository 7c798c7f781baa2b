"""Counterexample hunting for the open weighted-chain conjecture region.

Random sampling over (instance, s, t, r, p) followed by local perturbation
descent from the worst point.  A negative margin beyond tolerance is never
claimed as a counterexample: it is re-evaluated in extended precision and
reported as a violation candidate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import errors, highprec
from .blocks import InstanceSet
from .chains import ChainParams, expand_norm_tokens, t_chain_status, t_chain_terms
from .generate import DEFAULT_LAW, SpectrumLaw, derive_seed, generate_instance
from .linalg import hermitian_eig, hermitize
from .norms import NormSpec, norm_from_sv
from .reports import SCHEMA_VERSION

_REFINE_TAG = 0x52464E45  # distinct seed stream for refinement steps


@dataclass
class SearchConfig:
    base_seed: int = 7
    samples: int = 1000
    refine_steps: int = 0
    refine_scale: float = 0.05
    s_range: tuple = (1.0, 2.0)
    t_range: tuple = (0.5, 0.5)
    r_values: list = field(default_factory=lambda: [1.0])
    p_values: list = field(default_factory=lambda: [1.0])
    n_max: int = 4
    m_max: int = 3
    spectrum_law: SpectrumLaw = DEFAULT_LAW
    norms: list = field(default_factory=lambda: ["kyfan:all"])
    tol_rel: float = 1e-8
    condition_cap: float = 1e8

    def validate(self) -> "SearchConfig":
        if self.samples < 1:
            raise errors.ConfigError("samples must be >= 1")
        if self.refine_steps < 0 or self.refine_scale <= 0.0:
            raise errors.ConfigError("refine_steps >= 0 and refine_scale > 0 required")
        if not (0.0 < self.s_range[0] <= self.s_range[1]):
            raise errors.ConfigError(f"invalid s_range {self.s_range}")
        if not (0.0 <= self.t_range[0] <= self.t_range[1] <= 1.0):
            raise errors.ConfigError(f"invalid t_range {self.t_range}")
        if self.n_max < 1 or self.m_max < 1:
            raise errors.ConfigError("n_max and m_max must be >= 1")
        if not self.r_values or not self.p_values:
            raise errors.ConfigError("r_values and p_values must be nonempty")
        return self


def _complex_to_lists(M: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(M, dtype=np.complex128)]


def _lists_to_complex(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


@dataclass
class SearchResult:
    """Minimum normalized margin found and a reproducible arg-min point.

    wall_seconds is informational and excluded from serialization so that
    repeated runs write byte-identical files.
    """

    min_margin: float
    argmin: dict | None
    samples_evaluated: int
    gated_count: int
    base_seed: int
    candidate: bool
    recheck_margin: float | None
    wall_seconds: float = 0.0

    def to_record(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "search_result",
            "base_seed": self.base_seed,
            "samples_evaluated": self.samples_evaluated,
            "gated_count": self.gated_count,
            "min_margin": self.min_margin,
            "candidate": self.candidate,
            "recheck_margin": self.recheck_margin,
            "argmin": self.argmin,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SearchResult":
        return cls(
            min_margin=rec["min_margin"],
            argmin=rec["argmin"],
            samples_evaluated=rec["samples_evaluated"],
            gated_count=rec["gated_count"],
            base_seed=rec["base_seed"],
            candidate=rec["candidate"],
            recheck_margin=rec["recheck_margin"],
        )


def _point_margin(inst: InstanceSet, params: ChainParams, norms, condition_cap):
    """Min over norms of (rhs - lhs) / max(1, rhs); None when gated."""
    terms = t_chain_terms(inst, params)
    if terms.condition_max > condition_cap:
        return None, None
    best, best_spec = np.inf, None
    for spec in expand_norm_tokens(norms, terms.max_dim):
        lhs = norm_from_sv(terms.lhs_sv, spec, pad=True)
        rhs = norm_from_sv(terms.rhs_sv, spec, pad=True)
        margin = (rhs - lhs) / max(1.0, rhs)
        if margin < best:
            best, best_spec = margin, spec
    return float(best), best_spec


def _sample_point(cfg: SearchConfig, k: int):
    rng = np.random.default_rng(derive_seed(cfg.base_seed, k))
    n = int(rng.integers(1, cfg.n_max + 1))
    m = int(rng.integers(1, cfg.m_max + 1))
    s = float(rng.uniform(*cfg.s_range))
    t = float(rng.uniform(*cfg.t_range))
    r = float(cfg.r_values[int(rng.integers(0, len(cfg.r_values)))])
    p = float(cfg.p_values[int(rng.integers(0, len(cfg.p_values)))])
    inst_seed = derive_seed(cfg.base_seed, (k << 1) | 1)
    inst = generate_instance("generic", n, m, inst_seed, cfg.spectrum_law)
    return inst, ChainParams(s=s, r=r, p=p, t=t)


def _perturb_matrix(H: np.ndarray, rng: np.random.Generator, scale: float) -> np.ndarray:
    """Multiplicative eigenvalue jitter plus a small basis rotation;
    preserves positive definiteness."""
    eig = hermitian_eig(H)
    n = H.shape[0]
    lam = eig.eigenvalues * np.exp(scale * rng.standard_normal(n))
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, _ = np.linalg.qr(np.eye(n) + scale * G)
    V = eig.vectors @ Q
    return hermitize((V * lam) @ V.conj().T)


def _perturb_point(inst, params, cfg, rng):
    A = [_perturb_matrix(Ai, rng, cfg.refine_scale) for Ai in inst.A]
    B = [_perturb_matrix(Bi, rng, cfg.refine_scale) for Bi in inst.B]
    new_inst = InstanceSet(m=inst.m, n=inst.n, A=A, B=B, seed=inst.seed, kind="generic")

    def jitter(v, lo, hi):
        if hi <= lo:
            return v
        return float(np.clip(v + cfg.refine_scale * (hi - lo) * rng.standard_normal(), lo, hi))

    new_params = ChainParams(
        s=jitter(params.s, *cfg.s_range),
        r=params.r,
        p=params.p,
        t=jitter(params.t, *cfg.t_range),
    )
    return new_inst, new_params


def _argmin_record(inst: InstanceSet, params: ChainParams, spec: NormSpec, margin: float) -> dict:
    from .reports import norm_record

    return {
        "kind": inst.kind,
        "n": inst.n,
        "m": inst.m,
        "instance_seed": inst.seed,
        "params": params.as_dict(),
        "norm": norm_record(spec),
        "margin": margin,
        "status": t_chain_status(params),
        "A": [_complex_to_lists(Ai) for Ai in inst.A],
        "B": [_complex_to_lists(Bi) for Bi in inst.B],
    }


def evaluate_argmin(result_or_argmin, condition_cap: float = 1e8) -> float:
    """Re-evaluate a serialized arg-min point; returns its normalized margin."""
    arg = result_or_argmin.argmin if isinstance(result_or_argmin, SearchResult) else result_or_argmin
    inst = InstanceSet(
        m=arg["m"],
        n=arg["n"],
        A=[_lists_to_complex(Ai) for Ai in arg["A"]],
        B=[_lists_to_complex(Bi) for Bi in arg["B"]],
        seed=arg["instance_seed"],
        kind=arg["kind"],
    )
    params = ChainParams(**arg["params"])
    norm = _spec_from_record(arg["norm"])
    terms = t_chain_terms(inst, params)
    lhs = norm_from_sv(terms.lhs_sv, norm, pad=True)
    rhs = norm_from_sv(terms.rhs_sv, norm, pad=True)
    return float((rhs - lhs) / max(1.0, rhs))


def _spec_from_record(rec: dict) -> NormSpec:
    if rec["variant"] == "kyfan":
        return NormSpec.ky_fan(rec["k"])
    if rec["variant"] == "schatten":
        p = np.inf if rec["p"] == "inf" else rec["p"]
        return NormSpec.schatten(p)
    return NormSpec(rec["variant"])


def hunt(cfg: SearchConfig) -> SearchResult:
    """Random search plus keep-if-smaller refinement over the configured
    conjecture region."""
    cfg.validate()
    t0 = time.perf_counter()
    best_margin = np.inf
    best_point = None  # (inst, params, spec)
    gated = 0
    evaluated = 0
    for k in range(cfg.samples):
        inst, params = _sample_point(cfg, k)
        margin, spec = _point_margin(inst, params, cfg.norms, cfg.condition_cap)
        if margin is None:
            gated += 1
            continue
        evaluated += 1
        if margin < best_margin:
            best_margin, best_point = margin, (inst, params, spec)

    if best_point is not None and cfg.refine_steps:
        inst, params, spec = best_point
        for step in range(cfg.refine_steps):
            rng = np.random.default_rng(derive_seed(cfg.base_seed ^ _REFINE_TAG, step))
            cand_inst, cand_params = _perturb_point(inst, params, cfg, rng)
            margin, cand_spec = _point_margin(cand_inst, cand_params, cfg.norms, cfg.condition_cap)
            evaluated += 1 if margin is not None else 0
            gated += 1 if margin is None else 0
            if margin is not None and margin < best_margin:
                best_margin = margin
                inst, params, spec = cand_inst, cand_params, cand_spec
        best_point = (inst, params, spec)

    candidate = False
    recheck = None
    argmin = None
    if best_point is not None:
        inst, params, spec = best_point
        argmin = _argmin_record(inst, params, spec, float(best_margin))
        if best_margin < -cfg.tol_rel:
            # confirm in extended precision before surfacing
            recheck = highprec.t_chain_margin(inst.A, inst.B, params, spec)
            candidate = recheck < -cfg.tol_rel
    return SearchResult(
        min_margin=float(best_margin),
        argmin=argmin,
        samples_evaluated=evaluated,
        gated_count=gated,
        base_seed=cfg.base_seed,
        candidate=candidate,
        recheck_margin=recheck,
        wall_seconds=time.perf_counter() - t0,
    )
