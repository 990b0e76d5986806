"""Certificates for the operator inequalities this library implements.

Each checker constructs the witness unitary the corresponding statement
asserts to exist (always the adjoint of the polar unitary factor of the
relevant image matrix, never a searched one), assembles both sides of the
inequality, and returns a machine-checkable certificate with the full slack
spectrum. Worked sharpness examples and an empirical search for the best
constant at small weights round out the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .core import (
    MajorizationReport,
    as_matrix,
    conj_real_part,
    direct_sum,
    geometric_mean,
    hermitian_part,
    is_contraction,
    is_normal,
    kron,
    mat_abs,
    polar,
    random_contraction,
    random_matrix,
    random_normal,
    random_psd,
    schur_prod,
    singular_values,
    spectral_norm,
    weak_log_majorize,
)
from .maps import (
    PositiveMapRep,
    apply,
    compose,
    corner_block_map,
    halmos_dilation,
    is_unital,
    partial_trace_first,
    principal_submatrix_map,
    random_cp_map,
    random_unital_cp_map,
    schur_multiplier,
)

__all__ = [
    "DEFAULT_TOL",
    "Certificate",
    "ScalarCheck",
    "EigenCorollaryReports",
    "RealPartReport",
    "RussoDyeReports",
    "ReproResult",
    "witness_unitary",
    "check_theorem_main",
    "chain_certificate",
    "check_block_certificate",
    "check_corollary_eigen",
    "check_real_part",
    "check_partial_trace",
    "check_sum_of_normals",
    "check_russo_dye",
    "check_weighted_sum",
    "check_schur_diagonal",
    "check_schur_normal",
    "check_hermitian_sum",
    "check_schur_square",
    "check_two_positive_unital",
    "sharpness_family",
    "repro_sharpness_beta",
    "repro_no_single_unitary",
    "quarter_sharpness_map",
    "quarter_sharpness_hermitian",
    "repro_psi_sharpness",
    "search_nonnormal_counterexample",
    "minimal_orbit_constant",
    "estimate_constant",
    "run_trial",
    "trial_statements",
]

DEFAULT_TOL = 1e-8

# Fault-injection hook for harness self-tests: when True the arithmetic
# certificate assembles its right-hand side with the orbit term negated.
MUTANT_FLIP_RHS_SIGN = False


@dataclass(frozen=True, eq=False)
class Certificate:
    """One verified operator inequality ``lhs <= rhs``.

    ``slack_spectrum`` holds the descending eigenvalues of ``rhs - lhs``;
    the check passes iff its minimum is at least ``-tol * max(1, ||rhs||)``.
    """

    statement_id: str
    lhs: np.ndarray
    rhs: np.ndarray
    slack_spectrum: np.ndarray
    passed: bool
    tol: float
    witness: Optional[np.ndarray] = None
    beta: Optional[float] = None

    @property
    def min_slack(self) -> float:
        return float(self.slack_spectrum.min()) if self.slack_spectrum.size else 0.0


class ScalarCheck(NamedTuple):
    """A scalar inequality outcome with the same (passed, min_slack) surface."""

    passed: bool
    min_slack: float


@dataclass(frozen=True, eq=False)
class EigenCorollaryReports:
    """Eigenvalue-level consequences: log-majorization, pair bounds, shifted bounds."""

    log_majorization: MajorizationReport
    pair_bounds: Certificate
    shifted_bounds: Certificate


@dataclass(frozen=True, eq=False)
class RealPartReport:
    """Entrywise-real-part comparison for a normal matrix, via two routes."""

    construction_route: MajorizationReport
    direct_route: MajorizationReport
    det_lhs: float
    det_rhs: float
    det_check: ScalarCheck

    @property
    def passed(self) -> bool:
        return (
            self.construction_route.passed
            and self.direct_route.passed
            and self.det_check.passed
        )


@dataclass(frozen=True, eq=False)
class RussoDyeReports:
    """Contraction bounds: arithmetic, geometric-mean and log-majorization forms."""

    arithmetic: Certificate
    geometric: Certificate
    log_majorization: MajorizationReport


@dataclass(frozen=True, eq=False)
class ReproResult:
    """Named reproduction of a worked example: computed vs expected quantities."""

    example_id: str
    computed: dict
    expected: dict
    max_abs_error: float
    tol: float
    notes: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_abs_error <= self.tol


def _eig_desc(x) -> np.ndarray:
    return np.sort(np.linalg.eigvalsh(hermitian_part(x)))[::-1]


def _certificate(statement_id, lhs, rhs, *, witness=None, beta=None, tol=DEFAULT_TOL) -> Certificate:
    lhs = hermitian_part(as_matrix(lhs, square=True, name="lhs"))
    rhs = hermitian_part(as_matrix(rhs, square=True, name="rhs"))
    slack = _eig_desc(rhs - lhs)
    scale = max(1.0, spectral_norm(rhs))
    passed = bool(slack.size == 0 or slack[-1] >= -tol * scale)
    return Certificate(
        statement_id=statement_id,
        lhs=lhs,
        rhs=rhs,
        slack_spectrum=slack,
        passed=passed,
        tol=tol,
        witness=witness,
        beta=beta,
    )


def _psd_certificate(statement_id, block, *, tol=DEFAULT_TOL) -> Certificate:
    zero = np.zeros_like(block)
    return _certificate(statement_id, zero, block, tol=tol)


def _require_normal(x, name="matrix", tol=1e-8) -> np.ndarray:
    x = as_matrix(x, square=True, name=name)
    if not is_normal(x, tol):
        raise ValueError(f"{name} must be normal")
    return x


def _require_contraction(z, name="z") -> np.ndarray:
    z = as_matrix(z, square=True, name=name)
    if not is_contraction(z):
        raise ValueError(f"{name} must be a contraction")
    return z


def _clip_desc(values) -> np.ndarray:
    return np.maximum(np.asarray(values, dtype=float), 0.0)


def witness_unitary(y) -> np.ndarray:
    """The unitary v with ``y = v* |y|``: the adjoint of the polar unitary factor.

    Singular inputs use the completed polar decomposition, so the zero matrix
    gives the identity.
    """
    return polar(y).unitary_factor.conj().T


def check_theorem_main(pmap: PositiveMapRep, nmat, beta: float, tol: float = DEFAULT_TOL):
    """Both orbit bounds for a normal matrix under a positive map at weight ``beta``.

    Returns the arithmetic certificate
    ``|map(n)| <= beta map(|n|) + (1/(4 beta)) v map(|n|) v*`` and the
    geometric-mean refinement ``|map(n)| <= map(|n|) # v map(|n|) v*``,
    both with the polar witness ``v`` of ``map(n)``.
    """
    nmat = _require_normal(nmat, "nmat")
    if not beta > 0:
        raise ValueError("beta must be positive")
    image = apply(pmap, nmat)
    image_abs = apply(pmap, mat_abs(nmat))
    v = witness_unitary(image)
    lhs = mat_abs(image)
    orbit = hermitian_part(v @ image_abs @ v.conj().T)
    sign = -1.0 if MUTANT_FLIP_RHS_SIGN else 1.0
    arith = _certificate(
        "main-arith",
        lhs,
        beta * image_abs + sign * orbit / (4.0 * beta),
        witness=v,
        beta=beta,
        tol=tol,
    )
    geom = _certificate(
        "main-geom",
        lhs,
        geometric_mean(image_abs, orbit),
        witness=v,
        beta=beta,
        tol=tol,
    )
    return arith, geom


def chain_certificate(geom: Certificate, arith: Certificate, tol: float = DEFAULT_TOL) -> Certificate:
    """The geometric-mean bound never exceeds the arithmetic one (AM-GM chain)."""
    return _certificate("main-chain", geom.rhs, arith.rhs, beta=arith.beta, tol=tol)


def check_block_certificate(pmap: PositiveMapRep, nmat, tol: float = DEFAULT_TOL) -> Certificate:
    """The 2x2 block matrix [[map(|n|), map(n)], [map(n*), map(|n|)]] is PSD."""
    nmat = _require_normal(nmat, "nmat")
    image = apply(pmap, nmat)
    image_star = apply(pmap, nmat.conj().T)
    image_abs = apply(pmap, mat_abs(nmat))
    block = np.block([[image_abs, image], [image_star, image_abs]])
    return _psd_certificate("block-psd", block, tol=tol)


def check_corollary_eigen(
    pmap: PositiveMapRep, nmat, beta: float, tol: float = DEFAULT_TOL
) -> EigenCorollaryReports:
    """Eigenvalue consequences of the orbit bound.

    (a) the singular values of ``map(n)`` are weakly log-majorized by the
    eigenvalues of ``map(|n|)``; (b) for every valid pair ``(j, k)`` the
    ``(j+k-1)``-th singular value is at most the geometric mean of the j-th
    and k-th eigenvalues; (c) the eigenvalues of ``|map(n)| - beta map(|n|)``
    scaled by ``4 beta`` stay below those of ``map(|n|)``.
    """
    nmat = _require_normal(nmat, "nmat")
    if not beta > 0:
        raise ValueError("beta must be positive")
    image = apply(pmap, nmat)
    image_abs_arg = apply(pmap, mat_abs(nmat))
    s = singular_values(image)
    t = _eig_desc(image_abs_arg)
    logmaj = weak_log_majorize(s, _clip_desc(t), tol=1e-9)

    m = s.size
    lhs_vals, rhs_vals = [], []
    t_clip = _clip_desc(t)
    for j in range(1, m + 1):
        for k in range(1, m + 1):
            if j + k - 1 <= m:
                lhs_vals.append(s[j + k - 2])
                rhs_vals.append(math.sqrt(t_clip[j - 1] * t_clip[k - 1]))
    pair_cert = _certificate(
        "eigen-pairs", np.diag(lhs_vals), np.diag(rhs_vals), tol=tol
    )

    shifted = _eig_desc(mat_abs(image) - beta * image_abs_arg)
    shift_cert = _certificate(
        "eigen-shift", np.diag(4.0 * beta * shifted), np.diag(t), beta=beta, tol=tol
    )
    return EigenCorollaryReports(logmaj, pair_cert, shift_cert)


def check_real_part(a, tol: float = DEFAULT_TOL) -> RealPartReport:
    """Entrywise real part of a normal matrix against the real part of its absolute value.

    Route one runs the block construction: the direct sum with the conjugate
    matrix, averaged over the diagonal blocks. Route two compares singular
    values of the real part with the eigenvalues of the (PSD) real part of
    the absolute value directly. Both determinants are reported; the real
    part of a PSD matrix is again PSD, so the right-hand determinant is
    nonnegative.
    """
    a = _require_normal(a, "a")
    n = a.shape[0]
    doubled = direct_sum([a, np.conj(a)])
    averager = corner_block_map("diag_average", n)
    image = apply(averager, doubled)
    image_abs_arg = apply(averager, mat_abs(doubled))
    construction = weak_log_majorize(
        singular_values(image), _clip_desc(_eig_desc(image_abs_arg)), tol=1e-9
    )

    real_a = conj_real_part(a)
    real_abs = conj_real_part(mat_abs(a))
    direct = weak_log_majorize(
        singular_values(real_a), _clip_desc(_eig_desc(real_abs)), tol=1e-9
    )

    det_lhs = float(abs(np.linalg.det(real_a)))
    det_rhs = float(np.linalg.det(real_abs).real)
    margin = det_rhs - det_lhs
    # the real part of a PSD matrix is PSD, so the right determinant is >= 0
    det_ok = margin >= -tol * max(1.0, abs(det_rhs)) and det_rhs >= -tol
    return RealPartReport(construction, direct, det_lhs, det_rhs, ScalarCheck(bool(det_ok), margin))


def check_partial_trace(nmat, d: int, n: int, tol: float = DEFAULT_TOL) -> Certificate:
    """Geometric-mean orbit bound for the partial trace of a normal block matrix."""
    nmat = _require_normal(nmat, "nmat")
    if nmat.shape[0] != d * n:
        raise ValueError(f"matrix of dimension {nmat.shape[0]}, expected {d * n}")
    trace_map = partial_trace_first(d, n)
    traced = apply(trace_map, nmat)
    traced_abs = apply(trace_map, mat_abs(nmat))
    v = witness_unitary(traced)
    orbit = hermitian_part(v @ traced_abs @ v.conj().T)
    return _certificate(
        "ptrace-geom",
        mat_abs(traced),
        geometric_mean(traced_abs, orbit),
        witness=v,
        tol=tol,
    )


def check_sum_of_normals(mats: Sequence, tol: float = DEFAULT_TOL):
    """Orbit bounds for a sum of normal matrices, built through the partial trace.

    Returns the geometric-mean certificate and the weaker arithmetic one on
    ``sum |n_i|`` and its unitary conjugate.
    """
    mats = [_require_normal(m, f"mats[{i}]") for i, m in enumerate(mats)]
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise ValueError("all matrices must share one dimension")
    block = direct_sum(mats)
    trace_map = partial_trace_first(len(mats), n)
    total = apply(trace_map, block)
    total_abs = apply(trace_map, mat_abs(block))
    v = witness_unitary(total)
    orbit = hermitian_part(v @ total_abs @ v.conj().T)
    lhs = mat_abs(total)
    geom = _certificate(
        "sum-normals-geom", lhs, geometric_mean(total_abs, orbit), witness=v, tol=tol
    )
    arith = _certificate(
        "sum-normals-arith", lhs, (total_abs + orbit) / 2.0, witness=v, tol=tol
    )
    return geom, arith


def check_russo_dye(pmap: PositiveMapRep, z, tol: float = DEFAULT_TOL) -> RussoDyeReports:
    """Norm-at-identity bounds for a contraction, via the unitary dilation.

    The contraction is dilated to a unitary twice its size, the map is
    composed with upper-left block extraction, and the image of the dilation
    (equal to the image of the contraction) is bounded by combinations of the
    image of the identity.
    """
    z = _require_contraction(z)
    if z.shape[0] != pmap.input_dim:
        raise ValueError("dimension mismatch between map and contraction")
    n = z.shape[0]
    dilation = halmos_dilation(z)
    extended = compose(pmap, corner_block_map("upper_left", n))
    image = apply(extended, dilation)
    lhs = mat_abs(image)
    v = witness_unitary(image)
    image_id = hermitian_part(apply(pmap, np.eye(n, dtype=complex)))
    orbit = hermitian_part(v @ image_id @ v.conj().T)
    arith = _certificate(
        "contraction-arith", lhs, (image_id + orbit) / 2.0, witness=v, tol=tol
    )
    geom = _certificate(
        "contraction-geom", lhs, geometric_mean(image_id, orbit), witness=v, tol=tol
    )
    logmaj = weak_log_majorize(
        singular_values(image), _clip_desc(_eig_desc(image_id)), tol=1e-9
    )
    return RussoDyeReports(arith, geom, logmaj)


def check_weighted_sum(xs: Sequence, zs: Sequence, tol: float = DEFAULT_TOL):
    """Weighted sums of contractions against the Gram sum.

    For factors ``x_i`` (all of one rectangular shape) and contractions
    ``z_i`` acting on their row space, the singular values of
    ``sum x_i* z_i x_i`` are weakly log-majorized by the eigenvalues of
    ``sum x_i* x_i``; the associated 2x2 block matrix is PSD, which carries
    the factorization through a contraction.
    """
    if len(xs) != len(zs):
        raise ValueError("xs and zs must have equal length")
    if not xs:
        raise ValueError("need at least one summand")
    xs = [as_matrix(x, name=f"xs[{i}]") for i, x in enumerate(xs)]
    rows, cols = xs[0].shape
    if any(x.shape != (rows, cols) for x in xs):
        raise ValueError("all xs must share one shape")
    zs = [_require_contraction(z, f"zs[{i}]") for i, z in enumerate(zs)]
    if any(z.shape != (rows, rows) for z in zs):
        raise ValueError("each z must act on the row space of the xs")

    weighted = sum(x.conj().T @ z @ x for x, z in zip(xs, zs))
    gram = hermitian_part(sum(x.conj().T @ x for x in xs))
    logmaj = weak_log_majorize(
        singular_values(weighted), _clip_desc(_eig_desc(gram)), tol=1e-9
    )
    upper_left = sum(x.conj().T @ mat_abs(z.conj().T) @ x for x, z in zip(xs, zs))
    lower_right = sum(x.conj().T @ mat_abs(z) @ x for x, z in zip(xs, zs))
    block = np.block([[upper_left, weighted], [weighted.conj().T, lower_right]])
    return logmaj, _psd_certificate("weighted-sum-block", block, tol=tol)


def check_schur_diagonal(a, z, tol: float = DEFAULT_TOL) -> Certificate:
    """Entrywise product of a PSD matrix with a contraction against the diagonal part."""
    a = as_matrix(a, square=True, name="a")
    scale = max(1.0, spectral_norm(a))
    if np.linalg.eigvalsh(hermitian_part(a)).min() < -1e-9 * scale:
        raise ValueError("a must be PSD")
    z = _require_contraction(z)
    if a.shape != z.shape:
        raise ValueError("a and z must share one dimension")
    product = schur_prod(a, z)
    diag_part = schur_prod(a, np.eye(a.shape[0], dtype=complex))
    v = witness_unitary(product)
    orbit = hermitian_part(v @ diag_part @ v.conj().T)
    return _certificate(
        "schur-diagonal", mat_abs(product), (diag_part + orbit) / 2.0, witness=v, tol=tol
    )


def check_schur_normal(a, b, tol: float = DEFAULT_TOL) -> Certificate:
    """Entrywise product of two normal matrices with the sharp quarter constant.

    Realized through the tensor product: extracting the principal submatrix
    on the paired diagonal indices of ``a (x) b`` gives ``a o b``, and the
    absolute value of the tensor product factors entrywise, so the orbit
    bound with weights (1, 1/4) lands exactly on the stated inequality.
    """
    a = _require_normal(a, "a")
    b = _require_normal(b, "b")
    if a.shape != b.shape:
        raise ValueError("a and b must share one dimension")
    n = a.shape[0]
    extraction = principal_submatrix_map([i * n + i for i in range(n)], n * n)
    big = kron(a, b)
    product = apply(extraction, big)
    product_abs_arg = apply(extraction, mat_abs(big))
    v = witness_unitary(product)
    orbit = hermitian_part(v @ product_abs_arg @ v.conj().T)
    return _certificate(
        "schur-normal",
        mat_abs(product),
        product_abs_arg + orbit / 4.0,
        witness=v,
        beta=1.0,
        tol=tol,
    )


def _block_sum_of(x4: np.ndarray, n: int) -> np.ndarray:
    return x4[:n, :n] + x4[:n, n:] + x4[n:, :n] + x4[n:, n:]


def check_hermitian_sum(pmap: PositiveMapRep, x, tol: float = DEFAULT_TOL) -> Certificate:
    """Geometric-mean orbit bound for the image of ``x + x*``.

    The comparison argument is the block sum of the absolute value of the
    off-diagonal block matrix built from ``x`` (computed by mat_abs on the
    block, no closed-form identity assumed), which equals ``|x| + |x*|``.
    """
    x = as_matrix(x, square=True, name="x")
    if x.shape[0] != pmap.input_dim:
        raise ValueError("dimension mismatch between map and matrix")
    n = x.shape[0]
    zero = np.zeros((n, n), dtype=complex)
    block = np.block([[zero, x], [x.conj().T, zero]])
    comparison = _block_sum_of(mat_abs(block), n)
    image = apply(pmap, x + x.conj().T)
    arg = hermitian_part(apply(pmap, comparison))
    u = witness_unitary(image)
    orbit = hermitian_part(u @ arg @ u.conj().T)
    return _certificate(
        "hermitian-sum-geom", mat_abs(image), geometric_mean(arg, orbit), witness=u, tol=tol
    )


def check_schur_square(pmap: PositiveMapRep, x, tol: float = DEFAULT_TOL) -> Certificate:
    """Geometric-mean orbit bound for the image of ``x o x*``.

    Built through the tensor product of the two Hermitian off-diagonal block
    matrices carrying ``x``: principal-submatrix extraction followed by the
    block sum evaluates to twice ``x o x*``, and dividing out the factor two
    presents the inequality on the stated matrices.
    """
    x = as_matrix(x, square=True, name="x")
    if x.shape[0] != pmap.input_dim:
        raise ValueError("dimension mismatch between map and matrix")
    n = x.shape[0]
    zero = np.zeros((n, n), dtype=complex)
    left = np.block([[zero, x.conj().T], [x, zero]])
    right = np.block([[zero, x], [x.conj().T, zero]])
    extraction = principal_submatrix_map([i * 2 * n + i for i in range(2 * n)], 4 * n * n)
    summed = compose(corner_block_map("block_sum", n), extraction)
    full = compose(pmap, summed)
    big = kron(left, right)
    image = apply(full, big) / 2.0
    arg = hermitian_part(apply(full, mat_abs(big)) / 2.0)
    v = witness_unitary(image)
    orbit = hermitian_part(v @ arg @ v.conj().T)
    return _certificate(
        "schur-square-geom", mat_abs(image), geometric_mean(arg, orbit), witness=v, tol=tol
    )


def check_two_positive_unital(pmap: PositiveMapRep, z, tol: float = DEFAULT_TOL) -> Certificate:
    """For a unital map and a contraction: ``|map(z)| <= I/4 + map(|z|)``.

    No witness is needed; the statement requires unitality, so a non-unital
    map is rejected.
    """
    if not is_unital(pmap):
        raise ValueError("the quarter bound requires a unital map")
    z = _require_contraction(z)
    if z.shape[0] != pmap.input_dim:
        raise ValueError("dimension mismatch between map and contraction")
    image = apply(pmap, z)
    rhs = np.eye(pmap.output_dim, dtype=complex) / 4.0 + apply(pmap, mat_abs(z))
    return _certificate("two-positive-quarter", mat_abs(image), rhs, tol=tol)


# ---------------------------------------------------------------------------
# Worked sharpness examples and empirical searches.
# ---------------------------------------------------------------------------


def sharpness_family(beta: float):
    """The rank-one PSD multiplier and the flip reflexion of the sharpness family."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    a = np.array([[2.0 * beta, 1.0], [1.0, 1.0 / (2.0 * beta)]], dtype=complex)
    r = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    return a, r


def repro_sharpness_beta(beta: float) -> ReproResult:
    """Sharpness of the ``1/(4 beta)`` constant on the 2x2 multiplier family.

    For weight ``beta >= 1/2`` the top eigenvalue of
    ``|a o r| - beta (a o |r|)`` equals one half while the top of the scaled
    orbit term is ``c/2``, which forces ``c >= 1``: no smaller constant can
    replace ``1/(4 beta)``. The second eigenvalue is ``1 - 2 beta^2``.
    """
    if beta < 0.5:
        raise ValueError("the sharpness family is stated for beta >= 1/2")
    a, r = sharpness_family(beta)
    pmap = schur_multiplier(a)
    product = apply(pmap, r)
    product_abs_arg = hermitian_part(apply(pmap, mat_abs(r)))
    gap = _eig_desc(mat_abs(product) - beta * product_abs_arg)
    orbit_spectrum = _eig_desc(product_abs_arg)
    bound_top = orbit_spectrum[0] / (4.0 * beta)
    bound_second = orbit_spectrum[1] / (4.0 * beta)
    forced_c = float(gap[0] / bound_top)
    computed = {
        "lambda1": float(gap[0]),
        "lambda2": float(gap[1]),
        "orbit_bound_top": float(bound_top),
        "orbit_bound_second": float(bound_second),
        "c_min_forced": forced_c,
    }
    expected = {
        "lambda1": 0.5,
        "lambda2": 1.0 - 2.0 * beta**2,
        "orbit_bound_top": 0.5,
        "orbit_bound_second": 1.0 / (8.0 * beta**2),
        "c_min_forced": 1.0,
    }
    err = max(abs(computed[k] - expected[k]) for k in expected)
    notes = {
        "c_min_forced": "comparing top eigenvalues forces the constant to be at least 1",
    }
    if beta == 0.5:
        notes["equality"] = "at weight 1/2 the arithmetic bound is attained with equality"
    return ReproResult(
        example_id=f"sharpness-beta-{beta:g}",
        computed=computed,
        expected=expected,
        max_abs_error=float(err),
        tol=1e-12,
        notes=notes,
    )


def repro_no_single_unitary(angles) -> ReproResult:
    """No single unitary conjugate can dominate: the trace-ratio collapses.

    For each angle the partial trace of the block-diagonal difference of two
    rank-one projections has second singular value ``sin(a)`` while the traced
    absolute value has second eigenvalue ``1 - cos(a)``; their ratio
    ``(1 - cos a)/sin a = tan(a/2)`` tends to zero, so no constant times a
    single unitary orbit element can give an upper bound.
    """
    if np.isscalar(angles):
        angles = [float(angles)]
    angles = [float(a) for a in angles]
    if not angles:
        raise ValueError("need at least one angle")
    for a in angles:
        if not (0.0 < a <= math.pi / 2.0):
            raise ValueError("angles must lie in (0, pi/2]")
    trace_map = partial_trace_first(2, 2)
    computed, expected = {}, {}
    ratios = []
    for a in angles:
        p = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        q = np.array(
            [
                [math.cos(a) ** 2, math.sin(a) * math.cos(a)],
                [math.sin(a) * math.cos(a), math.sin(a) ** 2],
            ],
            dtype=complex,
        )
        block = direct_sum([p, -q])
        traced = apply(trace_map, block)
        traced_abs = apply(trace_map, mat_abs(block))
        lam2_abs = float(_eig_desc(traced_abs)[-1])
        lam2_image = float(singular_values(traced)[-1])
        ratio = lam2_abs / lam2_image
        key = f"ratio_a={a:g}"
        computed[key] = ratio
        expected[key] = math.tan(a / 2.0)
        ratios.append(ratio)
    decreasing = all(r1 > r2 for r1, r2 in zip(ratios, ratios[1:]))
    computed["monotone_decreasing"] = 1.0 if decreasing else 0.0
    expected["monotone_decreasing"] = 1.0
    err = max(abs(computed[k] - expected[k]) for k in expected)
    return ReproResult(
        example_id="no-single-unitary",
        computed=computed,
        expected=expected,
        max_abs_error=float(err),
        tol=1e-9,
        notes={
            "limit": "the ratio equals tan(a/2) and collapses to zero with the angle",
        },
    )


def quarter_sharpness_map() -> PositiveMapRep:
    """The unital CP map from 3x3 to 2x2 matrices attaining the quarter constant.

    Sends ``t`` to ``[[t11, t12/2], [t21/2, t22/4 + 3 t33/4]]``.
    """
    k1 = np.array([[1.0, 0.0], [0.0, 0.5], [0.0, 0.0]], dtype=complex)
    k2 = np.array([[0.0, 0.0], [0.0, 0.0], [0.0, math.sqrt(3.0) / 2.0]], dtype=complex)
    return PositiveMapRep(3, 2, (k1, k2), label="quarter-sharpness")


def quarter_sharpness_hermitian() -> np.ndarray:
    """The rank-two Hermitian contraction paired with the quarter-sharpness map."""
    h = np.zeros((3, 3), dtype=complex)
    h[0, 1] = h[1, 0] = 1.0
    return h


def repro_psi_sharpness() -> ReproResult:
    """The quarter constant in the unital two-positive bound cannot be improved.

    With the 3-to-2 map and the paired Hermitian contraction, the top
    eigenvalue of ``|map(h)| - map(|h|)`` is exactly one quarter. The stronger
    entrywise identity ``|map(h)| == diag(0, 1)/4 + map(|h|)`` does not hold
    (the left side is I/2, the right side diag(1, 1/2)); only the extremal
    eigenvalue matches, and that is what the sharpness claim needs. The gap of
    the would-be identity is recorded alongside.
    """
    pmap = quarter_sharpness_map()
    h = quarter_sharpness_hermitian()
    image_abs = mat_abs(apply(pmap, h))
    abs_image = hermitian_part(apply(pmap, mat_abs(h)))
    c_min = float(_eig_desc(image_abs - abs_image)[0])
    stated_rhs = np.diag([0.0, 0.25]).astype(complex) + abs_image
    identity_gap = spectral_norm(image_abs - stated_rhs)
    computed = {
        "c_min": c_min,
        "abs_image_11": float(image_abs[0, 0].real),
        "abs_image_22": float(image_abs[1, 1].real),
        "image_abs_arg_11": float(abs_image[0, 0].real),
        "image_abs_arg_22": float(abs_image[1, 1].real),
        "stated_identity_gap": float(identity_gap),
    }
    expected = {
        "c_min": 0.25,
        "abs_image_11": 0.5,
        "abs_image_22": 0.5,
        "image_abs_arg_11": 1.0,
        "image_abs_arg_22": 0.25,
        "stated_identity_gap": 0.5,
    }
    err = max(abs(computed[k] - expected[k]) for k in expected)
    return ReproResult(
        example_id="psi-quarter",
        computed=computed,
        expected=expected,
        max_abs_error=float(err),
        tol=1e-12,
        notes={
            "stated_identity": (
                "the entrywise identity |map(h)| == diag(0,1)/4 + map(|h|) fails: "
                "the left side is I/2 and the right side diag(1, 1/2); the sharp "
                "constant only needs the top eigenvalue of |map(h)| - map(|h|) to "
                "equal 1/4, which holds exactly"
            ),
        },
        matrices={"abs_image": image_abs, "image_of_abs": abs_image},
    )


def _real_part_margin(a) -> float:
    real_a = conj_real_part(a)
    real_abs = conj_real_part(mat_abs(a))
    return float(abs(np.linalg.det(real_a)) - np.linalg.det(real_abs).real)


def search_nonnormal_counterexample(seed, trials: int, threshold: float = 1e-9) -> ReproResult:
    """Random search for a nonnormal 2x2 matrix breaking the determinant bound.

    The determinant comparison that holds for every normal matrix can fail
    off the normal cone; the first random matrix exceeding the threshold is
    reported. Exhausting the budget is a reported outcome, not an error.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    for index in range(trials):
        candidate = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2.0)
        margin = _real_part_margin(candidate)
        if margin > threshold:
            real_abs = conj_real_part(mat_abs(candidate))
            return ReproResult(
                example_id="nonnormal-det",
                computed={
                    "found": 1.0,
                    "trial_index": float(index),
                    "margin": margin,
                    "det_real_part": float(abs(np.linalg.det(conj_real_part(candidate)))),
                    "det_abs_real_part": float(np.linalg.det(real_abs).real),
                },
                expected={"found": 1.0},
                max_abs_error=0.0,
                tol=0.5,
                notes={"margin": "violation of the normal-matrix determinant bound"},
                matrices={"matrix": candidate},
            )
    return ReproResult(
        example_id="nonnormal-det",
        computed={"found": 0.0, "trials": float(trials)},
        expected={"found": 1.0},
        max_abs_error=1.0,
        tol=0.5,
        notes={"outcome": "no violation found within the trial budget"},
    )


def minimal_orbit_constant(pmap: PositiveMapRep, nmat, beta: float, *, iterations: int = 60) -> float:
    """Smallest c with ``|map(n)| <= beta map(|n|) + c v map(|n|) v*`` for the polar witness.

    Feasibility is monotone in c, so bisection over [0, 1/(2 beta)] (twice the
    guaranteed constant) pins the value to near machine precision.
    """
    nmat = _require_normal(nmat, "nmat")
    if not beta > 0:
        raise ValueError("beta must be positive")
    image = apply(pmap, nmat)
    image_abs = hermitian_part(apply(pmap, mat_abs(nmat)))
    v = witness_unitary(image)
    orbit = hermitian_part(v @ image_abs @ v.conj().T)
    lhs = mat_abs(image)
    floor = -1e-12 * max(1.0, spectral_norm(image_abs))

    def feasible(c: float) -> bool:
        slack = beta * image_abs + c * orbit - lhs
        return float(np.linalg.eigvalsh(hermitian_part(slack)).min()) >= floor

    hi = 1.0 / (2.0 * beta)
    if not feasible(hi):
        raise RuntimeError("guaranteed constant infeasible; this indicates a bug")
    lo = 0.0
    if feasible(lo):
        return 0.0
    for _ in range(iterations):
        mid = (lo + hi) / 2.0
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def estimate_constant(
    beta_grid: Sequence[float],
    family: str = "mixed",
    seed=0,
    trials: int = 100,
    n: int = 2,
    m: int = 2,
):
    """Empirical best constants at small weights; exploratory data, no pass/fail.

    For each weight the pool holds the 2x2 sharpness-family instance (which
    attains the guaranteed constant with the polar witness) plus seeded random
    map/matrix pairs; rows report the observed maximum against the guaranteed
    bound ``1/(4 beta)``.
    """
    betas = [float(b) for b in beta_grid]
    if not betas:
        raise ValueError("beta grid must be nonempty")
    if any(not (0.0 < b <= 0.5 + 1e-12) for b in betas):
        raise ValueError("beta grid must lie in (0, 1/2]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if family not in ("mixed", "random", "reflexion"):
        raise ValueError(f"unknown family {family!r}")
    rows = []
    for bi, beta in enumerate(betas):
        pool = []
        if family in ("mixed", "reflexion"):
            a, r = sharpness_family(beta)
            pool.append((schur_multiplier(a), r))
        if family in ("mixed", "random"):
            for t in range(trials):
                pool.append(
                    (
                        random_cp_map([seed, bi, t, 0], n, m),
                        random_normal([seed, bi, t, 1], n),
                    )
                )
        best = max(minimal_orbit_constant(pmap, nm, beta) for pmap, nm in pool)
        bound = 1.0 / (4.0 * beta)
        rows.append(
            {
                "beta": beta,
                "empirical_c": float(best),
                "bound": bound,
                "ratio": float(best / bound),
            }
        )
    return rows


# ---------------------------------------------------------------------------
# Sweep assembly: every statement on fresh seeded instances for one trial.
# ---------------------------------------------------------------------------


def run_trial(master_seed: int, trial_index: int, n: int, m: int, betas: Sequence[float], tol: float = DEFAULT_TOL) -> dict:
    """All statement checks for one trial; instances derive from (seed, index).

    Returns a mapping from statement keys to outcome objects exposing
    ``passed`` and ``min_slack``; weight-dependent statements carry the weight
    in their key.
    """

    def sub(k: int):
        return [master_seed, trial_index, k]

    out: dict = {}
    pmap = random_cp_map(sub(0), n, m)
    nmat = random_normal(sub(1), n)
    for beta in betas:
        arith, geom = check_theorem_main(pmap, nmat, beta, tol)
        out[f"main-arith@beta={beta:g}"] = arith
        out[f"main-geom@beta={beta:g}"] = geom
        out[f"main-chain@beta={beta:g}"] = chain_certificate(geom, arith, tol)
    out["block-psd"] = check_block_certificate(pmap, nmat, tol)
    for i, beta in enumerate(betas):
        reports = check_corollary_eigen(pmap, nmat, beta, tol)
        if i == 0:
            out["eigen-logmaj"] = reports.log_majorization
            out["eigen-pairs"] = reports.pair_bounds
        out[f"eigen-shift@beta={beta:g}"] = reports.shifted_bounds

    real_report = check_real_part(random_normal(sub(2), n), tol)
    out["realpart-construction-logmaj"] = real_report.construction_route
    out["realpart-direct-logmaj"] = real_report.direct_route
    out["realpart-det"] = real_report.det_check

    out["ptrace-geom"] = check_partial_trace(random_normal(sub(3), 2 * n), 2, n, tol)
    summands = [random_normal(sub(4 + i), n) for i in range(3)]
    geom_sum, arith_sum = check_sum_of_normals(summands, tol)
    out["sum-normals-geom"] = geom_sum
    out["sum-normals-arith"] = arith_sum

    rd = check_russo_dye(pmap, random_contraction(sub(7), n), tol)
    out["contraction-arith"] = rd.arithmetic
    out["contraction-geom"] = rd.geometric
    out["contraction-logmaj"] = rd.log_majorization

    xs = [random_matrix(sub(8 + i), m, n) for i in range(3)]
    zs = [random_contraction(sub(11 + i), m) for i in range(3)]
    maj, block = check_weighted_sum(xs, zs, tol)
    out["weighted-sum-logmaj"] = maj
    out["weighted-sum-block"] = block

    out["schur-diagonal"] = check_schur_diagonal(
        random_psd(sub(14), n), random_contraction(sub(15), n), tol
    )
    out["schur-normal"] = check_schur_normal(
        random_normal(sub(16), n), random_normal(sub(17), n), tol
    )

    x_free = random_matrix(sub(18), n)
    out["hermitian-sum-geom"] = check_hermitian_sum(pmap, x_free, tol)
    out["schur-square-geom"] = check_schur_square(pmap, x_free, tol)

    out["two-positive-quarter"] = check_two_positive_unital(
        random_unital_cp_map(sub(19), n, m), random_contraction(sub(20), n), tol
    )
    return out


def trial_statements(betas: Sequence[float]) -> list:
    """Statement keys run_trial produces for a given weight list, in run order."""
    keys = []
    for beta in betas:
        keys += [
            f"main-arith@beta={beta:g}",
            f"main-geom@beta={beta:g}",
            f"main-chain@beta={beta:g}",
        ]
    keys.append("block-psd")
    keys += ["eigen-logmaj", "eigen-pairs"]
    keys += [f"eigen-shift@beta={beta:g}" for beta in betas]
    keys += [
        "realpart-construction-logmaj",
        "realpart-direct-logmaj",
        "realpart-det",
        "ptrace-geom",
        "sum-normals-geom",
        "sum-normals-arith",
        "contraction-arith",
        "contraction-geom",
        "contraction-logmaj",
        "weighted-sum-logmaj",
        "weighted-sum-block",
        "schur-diagonal",
        "schur-normal",
        "hermitian-sum-geom",
        "schur-square-geom",
        "two-positive-quarter",
    ]
    return keys
