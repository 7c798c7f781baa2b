"""Evaluators for the individual lemmas behind the chains, plus seeded
admissible-case generation for each lemma id.

Lemma ids:
  Araki               ||(BAB)^{pq}|| <= ||(B^q A^q B^q)^p||
  BlockNormal         ||Z|| <= ||sum_{ij} |Z_ij| ||  (Hermitian block matrix)
  Hoelder             ||XY|| <= |||X|^q||^{1/q} |||Y|^s||^{1/s}
  NormalProduct       ||AB|| <= ||BA|| when AB is normal
  PowerMonotoneFamily Ky Fan dominance of (A, B) implies dominance of (A^r, B^r)
  GramSwap            ||(Y*Y)^a|| = ||(YY*)^a||
  ConvexSubadd        ||sum f(A_i)|| <= ||f(sum A_i)||, f(x) = x^r, r >= 1
  ConcaveSubaddBU     ||f(A+B)|| <= ||f(A) + f(B)||, f(x) = x^theta, theta in (0, 1]
  AUBPower            || |AUB|^q || <= || |A^q U B^q| ||
  BlockDiagStep       || |X|^q || <= || sum_i |A_i^{s/2} U_i B_i^{s/2}| ||
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .chains import DEFAULT_TOL_REL
from .generate import DEFAULT_LAW, SpectrumLaw, haar_unitary, random_spd
from .linalg import hermitian_eig, hermitize, matrix_power
from .means import geometric_mean_unitary
from .norms import NormSpec, ky_fan_dominance, norm_from_sv, singular_values

LEMMA_IDS = (
    "Araki",
    "BlockNormal",
    "Hoelder",
    "NormalProduct",
    "PowerMonotoneFamily",
    "GramSwap",
    "ConvexSubadd",
    "ConcaveSubaddBU",
    "AUBPower",
    "BlockDiagStep",
)

UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class LemmaCase:
    """One admissible input for one lemma."""

    lemma_id: str
    operands: dict
    params: dict

    def __post_init__(self):
        if self.lemma_id not in LEMMA_IDS:
            raise errors.ConfigError(f"unknown lemma id {self.lemma_id!r}")


@dataclass(frozen=True)
class LemmaReport:
    lemma_id: str
    norm: NormSpec
    lhs: float
    rhs: float
    margin: float
    passed: bool
    equality: bool = False


def _psd_sv(H) -> np.ndarray:
    return np.clip(hermitian_eig(hermitize(H)).eigenvalues, 0.0, None)


def _require_unitary(U, name: str) -> np.ndarray:
    U = np.asarray(U, dtype=np.complex128)
    defect = np.abs(U @ U.conj().T - np.eye(U.shape[0])).max()
    if defect > UNITARY_TOL:
        raise errors.NotUnitary(f"{name}: unitarity defect {defect:.3e} > {UNITARY_TOL:.1e}")
    return U


class _LemmaTerms:
    """Precomputed singular value lists; norm evaluation is cheap per spec."""

    def __init__(self, lhs_sv, rhs_sv, equality=False, hoelder=None):
        self.lhs_sv = lhs_sv
        self.rhs_sv = rhs_sv
        self.equality = equality
        # (x_sv, y_sv, q, s): rhs is a product of two norms, not a norm
        self.hoelder = hoelder

    def values(self, norm: NormSpec) -> tuple:
        lhs = norm_from_sv(self.lhs_sv, norm, pad=True)
        if self.hoelder is not None:
            x_sv, y_sv, q, s = self.hoelder
            rhs = (
                norm_from_sv(x_sv ** q, norm, pad=True) ** (1.0 / q)
                * norm_from_sv(y_sv ** s, norm, pad=True) ** (1.0 / s)
            )
        else:
            rhs = norm_from_sv(self.rhs_sv, norm, pad=True)
        return lhs, rhs


def _terms_araki(case) -> _LemmaTerms:
    A, B = case.operands["A"], case.operands["B"]
    p, q = case.params["p"], case.params["q"]
    if not (q >= 1.0 and p > 0.0):
        raise errors.HypothesisViolation(f"need q >= 1 and p > 0, got q={q}, p={p}")
    bab = hermitize(B @ A @ B)
    lhs_sv = np.sort(_psd_sv(bab) ** (p * q))[::-1]
    Bq = matrix_power(B, q)
    inner = hermitize(Bq @ matrix_power(A, q) @ Bq)
    rhs_sv = np.sort(_psd_sv(inner) ** p)[::-1]
    return _LemmaTerms(lhs_sv, rhs_sv)


def _terms_block_normal(case) -> _LemmaTerms:
    Z = np.asarray(case.operands["Z"], dtype=np.complex128)
    n = int(case.params["n"])
    mn = Z.shape[0]
    if Z.shape[0] != Z.shape[1] or mn % n:
        raise errors.DimensionMismatch(f"block size {n} does not divide {Z.shape}")
    m = mn // n
    herm = np.abs(Z - Z.conj().T).max() <= 1e-10 * max(1.0, np.abs(Z).max())
    blocks = [
        [Z[i * n:(i + 1) * n, j * n:(j + 1) * n] for j in range(m)] for i in range(m)
    ]
    if not herm:
        for row in blocks:
            for blk in row:
                defect = np.abs(
                    blk @ blk.conj().T - blk.conj().T @ blk
                ).max()
                if defect > 1e-10 * max(1.0, np.abs(blk).max() ** 2):
                    raise errors.HypothesisViolation(
                        "Z is neither Hermitian nor built from normal blocks"
                    )
    lhs_sv = singular_values(Z)
    acc = np.zeros((n, n), dtype=np.complex128)
    for row in blocks:
        for blk in row:
            u, s, vh = np.linalg.svd(blk)
            acc += (vh.conj().T * s) @ vh  # |blk| = (blk* blk)^{1/2}
    rhs_sv = _psd_sv(acc)
    return _LemmaTerms(lhs_sv, rhs_sv)


def _terms_hoelder(case) -> _LemmaTerms:
    X, Y = case.operands["X"], case.operands["Y"]
    q, s = case.params["q"], case.params["s"]
    if not (q > 1.0 and s > 1.0 and abs(1.0 / q + 1.0 / s - 1.0) <= 1e-12):
        raise errors.HypothesisViolation(f"need conjugate exponents q, s > 1; got q={q}, s={s}")
    lhs_sv = singular_values(np.asarray(X) @ np.asarray(Y))
    return _LemmaTerms(
        lhs_sv, None, hoelder=(singular_values(X), singular_values(Y), q, s)
    )


def _terms_normal_product(case) -> _LemmaTerms:
    A = np.asarray(case.operands["A"], dtype=np.complex128)
    B = np.asarray(case.operands["B"], dtype=np.complex128)
    AB = A @ B
    defect = np.abs(AB @ AB.conj().T - AB.conj().T @ AB).max()
    if defect > 1e-10 * max(1.0, np.abs(AB).max() ** 2):
        raise errors.HypothesisViolation(f"AB is not normal: defect {defect:.3e}")
    return _LemmaTerms(singular_values(AB), singular_values(B @ A))


def _terms_power_monotone(case) -> _LemmaTerms:
    A, B = case.operands["A"], case.operands["B"]
    r = case.params["r"]
    if not r >= 1.0:
        raise errors.HypothesisViolation(f"need r >= 1, got r={r}")
    premise = ky_fan_dominance(A, B)
    if not premise.dominated:
        raise errors.HypothesisViolation(
            f"premise fails: Ky Fan {premise.worst_k} margin {premise.worst_margin:.3e}"
        )
    lhs_sv = np.sort(_psd_sv(A) ** r)[::-1]
    rhs_sv = np.sort(_psd_sv(B) ** r)[::-1]
    return _LemmaTerms(lhs_sv, rhs_sv)


def _terms_gram_swap(case) -> _LemmaTerms:
    Y = np.asarray(case.operands["Y"], dtype=np.complex128)
    a = case.params["a"]
    if a < 0.0:
        raise errors.HypothesisViolation(f"need a >= 0, got a={a}")
    lhs_sv = _spow(_psd_sv(Y.conj().T @ Y), a)
    rhs_sv = _spow(_psd_sv(Y @ Y.conj().T), a)
    return _LemmaTerms(lhs_sv, rhs_sv, equality=True)


def _spow(sv, x):
    sv = np.clip(sv, 0.0, None)
    sv[sv <= 1e-14 * sv.max(initial=0.0)] = 0.0
    return np.sort(sv ** x)[::-1]


def _terms_convex_subadd(case) -> _LemmaTerms:
    As = case.operands["A_list"]
    r = case.params["r"]
    if not r >= 1.0:
        raise errors.HypothesisViolation(f"f(x)=x^r needs r >= 1, got r={r}")
    lhs = sum(matrix_power(Ai, r) for Ai in As)
    rhs = matrix_power(hermitize(sum(As)), r)
    return _LemmaTerms(_psd_sv(lhs), _psd_sv(rhs))


def _terms_concave_subadd(case) -> _LemmaTerms:
    A, B = case.operands["A"], case.operands["B"]
    theta = case.params["theta"]
    if not 0.0 < theta <= 1.0:
        raise errors.HypothesisViolation(f"f(x)=x^theta needs theta in (0, 1], got {theta}")
    lhs = matrix_power(hermitize(np.asarray(A) + np.asarray(B)), theta)
    rhs = matrix_power(A, theta) + matrix_power(B, theta)
    return _LemmaTerms(_psd_sv(lhs), _psd_sv(rhs))


def _terms_aub_power(case) -> _LemmaTerms:
    A, B = case.operands["A"], case.operands["B"]
    U = _require_unitary(case.operands["U"], "U")
    q = case.params["q"]
    if not q >= 1.0:
        raise errors.HypothesisViolation(f"need q >= 1, got q={q}")
    lhs_sv = singular_values(np.asarray(A) @ U @ np.asarray(B)) ** q
    rhs_sv = singular_values(matrix_power(A, q) @ U @ matrix_power(B, q))
    return _LemmaTerms(lhs_sv, rhs_sv)


def _terms_block_diag_step(case) -> _LemmaTerms:
    As, Bs = case.operands["A_list"], case.operands["B_list"]
    s = case.params["s"]
    if not s > 1.0:
        raise errors.HypothesisViolation(f"need s > 1, got s={s}")
    q = s / (s - 1.0)
    lhs_blocks_sv = []
    k = np.asarray(As[0]).shape[0]
    acc = np.zeros((k, k), dtype=np.complex128)
    for Ai, Bi in zip(As, Bs):
        Ui = _require_unitary(
            geometric_mean_unitary(matrix_power(Ai, s), matrix_power(Bi, s)), "U_i"
        )
        lhs_blocks_sv.append(
            singular_values(matrix_power(Ai, (s - 1.0) / 2.0) @ Ui @ matrix_power(Bi, (s - 1.0) / 2.0))
        )
        M = matrix_power(Ai, s / 2.0) @ Ui @ matrix_power(Bi, s / 2.0)
        u, sv, vh = np.linalg.svd(M)
        acc = acc + (vh.conj().T * sv) @ vh  # |M|
    lhs_sv = np.sort(np.concatenate(lhs_blocks_sv) ** q)[::-1]
    rhs_sv = _psd_sv(acc)
    return _LemmaTerms(lhs_sv, rhs_sv)


_TERMS = {
    "Araki": _terms_araki,
    "BlockNormal": _terms_block_normal,
    "Hoelder": _terms_hoelder,
    "NormalProduct": _terms_normal_product,
    "PowerMonotoneFamily": _terms_power_monotone,
    "GramSwap": _terms_gram_swap,
    "ConvexSubadd": _terms_convex_subadd,
    "ConcaveSubaddBU": _terms_concave_subadd,
    "AUBPower": _terms_aub_power,
    "BlockDiagStep": _terms_block_diag_step,
}


def lemma_terms(case: LemmaCase) -> _LemmaTerms:
    return _TERMS[case.lemma_id](case)


def lemma_report_from_terms(
    lemma_id: str, terms: _LemmaTerms, norm: NormSpec, tol_rel: float = DEFAULT_TOL_REL
) -> LemmaReport:
    """Evaluate one norm on precomputed lemma terms."""
    lhs, rhs = terms.values(norm)
    margin = rhs - lhs
    scale = max(1.0, rhs)
    if terms.equality:
        passed = abs(margin) <= tol_rel * scale
    else:
        passed = margin >= -tol_rel * scale
    return LemmaReport(
        lemma_id=lemma_id,
        norm=norm,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        passed=bool(passed),
        equality=terms.equality,
    )


def eval_lemma(case: LemmaCase, norm: NormSpec, tol_rel: float = DEFAULT_TOL_REL) -> LemmaReport:
    """Evaluate both sides of the cited statement under one norm."""
    return lemma_report_from_terms(case.lemma_id, lemma_terms(case), norm, tol_rel)


def random_case(
    lemma_id: str,
    seed: int,
    n: int = 2,
    m: int = 2,
    law: SpectrumLaw = DEFAULT_LAW,
) -> LemmaCase:
    """Seeded admissible case for the given lemma."""
    rng = np.random.default_rng(seed)

    def ginibre(k):
        return (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))) / np.sqrt(2.0)

    if lemma_id == "Araki":
        return LemmaCase(lemma_id, {"A": random_spd(n, rng, law), "B": random_spd(n, rng, law)},
                         {"p": float(rng.uniform(0.25, 2.0)), "q": float(rng.uniform(1.0, 3.0))})
    if lemma_id == "BlockNormal":
        # Hermitian block matrix: H = G + G* in mn x mn
        G = ginibre(m * n)
        return LemmaCase(lemma_id, {"Z": hermitize(G)}, {"n": n})
    if lemma_id == "Hoelder":
        q = float(rng.uniform(1.2, 4.0))
        return LemmaCase(lemma_id, {"X": ginibre(n), "Y": ginibre(n)},
                         {"q": q, "s": q / (q - 1.0)})
    if lemma_id == "NormalProduct":
        # commuting Hermitian pair: the product is Hermitian, hence normal
        Q = haar_unitary(n, rng)
        a = rng.uniform(-2.0, 2.0, size=n)
        b = rng.uniform(-2.0, 2.0, size=n)
        return LemmaCase(lemma_id,
                         {"A": hermitize((Q * a) @ Q.conj().T), "B": hermitize((Q * b) @ Q.conj().T)},
                         {})
    if lemma_id == "PowerMonotoneFamily":
        # B random SPD; A gets entrywise-smaller eigenvalues in its own basis,
        # which gives weak majorization of singular values (the premise)
        lam_b = np.sort(law.sample(rng, n))[::-1]
        frac = rng.uniform(0.1, 1.0, size=n)
        Qa, Qb = haar_unitary(n, rng), haar_unitary(n, rng)
        A = hermitize((Qa * (lam_b * frac)) @ Qa.conj().T)
        B = hermitize((Qb * lam_b) @ Qb.conj().T)
        return LemmaCase(lemma_id, {"A": A, "B": B}, {"r": float(rng.uniform(1.0, 3.0))})
    if lemma_id == "GramSwap":
        return LemmaCase(lemma_id, {"Y": ginibre(n)}, {"a": float(rng.uniform(0.25, 2.5))})
    if lemma_id == "ConvexSubadd":
        return LemmaCase(lemma_id, {"A_list": [random_spd(n, rng, law) for _ in range(m)]},
                         {"r": float(rng.uniform(1.0, 3.0))})
    if lemma_id == "ConcaveSubaddBU":
        return LemmaCase(lemma_id, {"A": random_spd(n, rng, law), "B": random_spd(n, rng, law)},
                         {"theta": float(rng.uniform(0.05, 1.0))})
    if lemma_id == "AUBPower":
        return LemmaCase(lemma_id,
                         {"A": random_spd(n, rng, law), "B": random_spd(n, rng, law),
                          "U": haar_unitary(n, rng)},
                         {"q": float(rng.uniform(1.0, 3.0))})
    if lemma_id == "BlockDiagStep":
        return LemmaCase(lemma_id,
                         {"A_list": [random_spd(n, rng, law) for _ in range(m)],
                          "B_list": [random_spd(n, rng, law) for _ in range(m)]},
                         {"s": float(rng.uniform(1.1, 3.0))})
    raise errors.ConfigError(f"unknown lemma id {lemma_id!r}")
