"""Positive linear maps in Kraus congruence form.

A map acts as ``x -> sum_i k_i* x k_i`` with factors ``k_i`` of shape
``(input_dim, output_dim)``. This representation makes positivity and
complete positivity constructive: the Choi matrix of every map built here is
positive semidefinite by design, and named constructors cover the Schur
multiplier, partial traces, block compressions and compositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .core import (
    PSD_TOL,
    as_matrix,
    hermitian_part,
    herm_eig,
    is_normal,
    normal_eig,
    psd_sqrt,
    spectral_norm,
)

__all__ = [
    "PositiveMapRep",
    "ChoiData",
    "apply",
    "identity_map",
    "schur_multiplier",
    "partial_trace_first",
    "corner_block_map",
    "compose",
    "principal_submatrix_map",
    "choi",
    "is_unital",
    "two_positive_amplification",
    "commutative_restriction_kraus",
    "halmos_dilation",
    "random_cp_map",
    "random_unital_cp_map",
]

# Kraus factors below this Frobenius norm carry no information and are dropped
# so compositions do not explode in term count.
_KRAUS_DROP_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class PositiveMapRep:
    """A positive (completely positive) linear map in Kraus congruence form."""

    input_dim: int
    output_dim: int
    kraus_ops: tuple
    label: str = ""

    def __post_init__(self):
        if self.input_dim < 1 or self.output_dim < 1:
            raise ValueError("map dimensions must be >= 1")
        ops = tuple(as_matrix(k, name="kraus op") for k in self.kraus_ops)
        if not ops:
            raise ValueError("kraus_ops must be nonempty")
        for k in ops:
            if k.shape != (self.input_dim, self.output_dim):
                raise ValueError(
                    f"kraus op of shape {k.shape}, expected "
                    f"({self.input_dim}, {self.output_dim})"
                )
        object.__setattr__(self, "kraus_ops", ops)

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)


class ChoiData(NamedTuple):
    """Choi matrix and its smallest eigenvalue (PSD iff the map is CP)."""

    choi_matrix: np.ndarray
    min_eigenvalue: float


def apply(pmap: PositiveMapRep, x) -> np.ndarray:
    """Evaluate the map: sum over Kraus factors of ``k* x k``."""
    x = as_matrix(x, square=True, name="x")
    if x.shape[0] != pmap.input_dim:
        raise ValueError(f"input of dimension {x.shape[0]}, map expects {pmap.input_dim}")
    out = np.zeros((pmap.output_dim, pmap.output_dim), dtype=complex)
    for k in pmap.kraus_ops:
        out += k.conj().T @ x @ k
    return out


def _prune(ops: Sequence[np.ndarray], shape) -> tuple:
    kept = tuple(k for k in ops if np.linalg.norm(k) > _KRAUS_DROP_TOL)
    if kept:
        return kept
    return (np.zeros(shape, dtype=complex),)


def identity_map(n: int) -> PositiveMapRep:
    return PositiveMapRep(n, n, (np.eye(n, dtype=complex),), label=f"id({n})")


def schur_multiplier(a, *, psd_tol: float = PSD_TOL) -> PositiveMapRep:
    """Map ``x -> a o x`` (entrywise product) for a PSD matrix ``a``.

    The Kraus factors are diagonal, one per term of a rank-one decomposition
    of ``a``; conjugation puts the congruence convention in line with the
    entrywise product, which is verified against schur_prod in the tests.
    """
    a = as_matrix(a, square=True, name="a")
    n = a.shape[0]
    w, v = herm_eig(a, herm_tol=1e-10)
    scale = max(1.0, float(abs(w[0])) if w.size else 1.0)
    if w.size and w[-1] < -psd_tol * scale:
        raise ValueError("schur_multiplier needs a PSD matrix")
    ops = []
    for r in range(n):
        if w[r] > _KRAUS_DROP_TOL * scale:
            ops.append(np.diag(np.conj(np.sqrt(w[r]) * v[:, r])))
    return PositiveMapRep(n, n, _prune(ops, (n, n)), label=f"schur({n})")


def partial_trace_first(d: int, n: int) -> PositiveMapRep:
    """Partial trace over the first tensor factor: block matrix to sum of diagonal blocks."""
    if d < 1 or n < 1:
        raise ValueError("dimensions must be >= 1")
    eye = np.eye(n, dtype=complex)
    ops = []
    for i in range(d):
        e = np.zeros((d, 1), dtype=complex)
        e[i, 0] = 1.0
        ops.append(np.kron(e, eye))
    return PositiveMapRep(d * n, n, tuple(ops), label=f"ptrace1({d},{n})")


def corner_block_map(variant: str, n: int) -> PositiveMapRep:
    """Block maps on 2x2 block matrices over n x n blocks.

    ``"upper_left"`` extracts the (1,1) block, ``"diag_average"`` returns the
    mean of the two diagonal blocks, ``"block_sum"`` adds all four blocks (the
    congruence with the stacked-identity isometry).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    if variant == "upper_left":
        ops = (np.vstack([eye, zero]),)
    elif variant == "diag_average":
        ops = (np.vstack([eye, zero]) / np.sqrt(2.0), np.vstack([zero, eye]) / np.sqrt(2.0))
    elif variant == "block_sum":
        ops = (np.vstack([eye, eye]),)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return PositiveMapRep(2 * n, n, ops, label=f"{variant}({n})")


def compose(outer: PositiveMapRep, inner: PositiveMapRep) -> PositiveMapRep:
    """Composition acting as ``x -> outer(inner(x))``."""
    if inner.output_dim != outer.input_dim:
        raise ValueError(
            f"cannot compose: inner output {inner.output_dim} != outer input {outer.input_dim}"
        )
    ops = [ki @ kj for ki in inner.kraus_ops for kj in outer.kraus_ops]
    label = f"{outer.label or 'outer'}.{inner.label or 'inner'}"
    return PositiveMapRep(
        inner.input_dim,
        outer.output_dim,
        _prune(ops, (inner.input_dim, outer.output_dim)),
        label=label,
    )


def principal_submatrix_map(indices: Sequence[int], n: int) -> PositiveMapRep:
    """Extraction of the principal submatrix on 0-based ``indices``."""
    idx = [int(i) for i in indices]
    if not idx:
        raise ValueError("indices must be nonempty")
    if any(i < 0 or i >= n for i in idx):
        raise ValueError(f"indices must lie in [0, {n})")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError("indices must be strictly increasing")
    sel = np.zeros((n, len(idx)), dtype=complex)
    for j, i in enumerate(idx):
        sel[i, j] = 1.0
    return PositiveMapRep(n, len(idx), (sel,), label=f"submatrix({len(idx)}/{n})")


def choi(pmap: PositiveMapRep) -> ChoiData:
    """Choi matrix sum_ij E_ij (x) map(E_ij) and its least eigenvalue."""
    n, m = pmap.input_dim, pmap.output_dim
    c = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            c[i * m : (i + 1) * m, j * m : (j + 1) * m] = apply(pmap, e)
    c = (c + c.conj().T) / 2.0
    return ChoiData(c, float(np.linalg.eigvalsh(c).min()))


def is_unital(pmap: PositiveMapRep, tol: float = PSD_TOL) -> bool:
    """Whether the map sends the identity to the identity within ``tol``."""
    image = apply(pmap, np.eye(pmap.input_dim, dtype=complex))
    return spectral_norm(image - np.eye(pmap.output_dim)) <= tol


def two_positive_amplification(pmap: PositiveMapRep) -> PositiveMapRep:
    """Blockwise action on 2x2 block matrices: each block goes through the map."""
    eye2 = np.eye(2, dtype=complex)
    ops = tuple(np.kron(eye2, k) for k in pmap.kraus_ops)
    return PositiveMapRep(
        2 * pmap.input_dim,
        2 * pmap.output_dim,
        ops,
        label=f"amp2({pmap.label or 'map'})",
    )


def commutative_restriction_kraus(pmap: PositiveMapRep, nmat, *, tol: float = 1e-8) -> list:
    """Rank-one Kraus factors reproducing the map on the algebra generated by a normal matrix.

    For each spectral projection ``e_i = x_i x_i*`` of ``nmat`` the factors are
    ``x_i r_ij`` with ``r_ij`` the j-th row of the principal square root of
    ``map(e_i)``. Their congruence sum agrees with the map on the span of the
    projections (so on the matrix, its absolute value, and the identity when
    the matrix is invertible) but not on generic inputs outside that span.
    """
    nmat = as_matrix(nmat, square=True, name="nmat")
    if nmat.shape[0] != pmap.input_dim:
        raise ValueError("dimension mismatch between map and matrix")
    if not is_normal(nmat, tol):
        raise ValueError("commutative restriction requires a normal matrix")
    _, q = normal_eig(nmat, tol=tol)
    factors = []
    for i in range(nmat.shape[0]):
        x = q[:, i : i + 1]
        s = psd_sqrt(apply(pmap, x @ x.conj().T))
        for j in range(pmap.output_dim):
            z = x @ s[j : j + 1, :]
            if np.linalg.norm(z) > _KRAUS_DROP_TOL:
                factors.append(z)
    return factors


def halmos_dilation(z, *, tol: float = 1e-12) -> np.ndarray:
    """Unitary 2n x 2n dilation of a contraction, placed in the upper-left block.

    Both defect square roots are built from a single SVD of ``z`` so the block
    matrix is unitary to machine precision even when the norm is exactly one;
    defect eigenvalues pushed slightly negative by round-off are clipped at 0.
    """
    z = as_matrix(z, square=True, name="z")
    u, s, vh = np.linalg.svd(z)
    if s.size and s[0] > 1.0 + tol:
        raise ValueError(f"not a contraction: largest singular value {s[0]}")
    c = np.sqrt(np.clip(1.0 - s**2, 0.0, None))
    left_defect = (u * c) @ u.conj().T
    right_defect = (vh.conj().T * c) @ vh
    return np.block([[z, -left_defect], [right_defect, z.conj().T]])


def random_cp_map(seed, n: int, m: int, terms: Optional[int] = None) -> PositiveMapRep:
    """Seeded completely positive map with Gaussian Kraus factors."""
    if n < 1 or m < 1:
        raise ValueError("dimensions must be >= 1")
    terms = n * m if terms is None else terms
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = np.random.default_rng(seed)
    ops = tuple(
        (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m)))
        / np.sqrt(2.0 * n * terms)
        for _ in range(terms)
    )
    return PositiveMapRep(n, m, ops, label=f"random-cp({n},{m})")


def random_unital_cp_map(seed, n: int, m: int, terms: Optional[int] = None) -> PositiveMapRep:
    """Seeded CP map normalized so the identity maps to the identity."""
    base = random_cp_map(seed, n, m, terms)
    image = apply(base, np.eye(n, dtype=complex))
    w, v = np.linalg.eigh(hermitian_part(image))
    w = np.maximum(w, 1e-12 * max(1.0, float(w.max())))
    inv_root = (v / np.sqrt(w)) @ v.conj().T
    ops = tuple(k @ inv_root for k in base.kraus_ops)
    return PositiveMapRep(n, m, ops, label=f"random-unital-cp({n},{m})")
