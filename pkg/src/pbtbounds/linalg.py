"""Hermitian linear algebra primitives for density-matrix numerics.

All states are dense complex matrices. Entropic quantities are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tolerance ladder: construction invariants are tightest, derived equalities loosest.
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-9
TOL_NUM = 1e-8

Array = np.ndarray


def _as_matrix(obj) -> Array:
    """Accept a raw array or anything carrying a .matrix attribute."""
    mat = getattr(obj, "matrix", obj)
    return np.asarray(mat, dtype=complex)


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace PSD matrix with subsystem-dimension metadata.

    dims lists the tensor factors in order; their product must equal the
    matrix dimension. Hermiticity, positivity and normalization are checked
    on construction.
    """

    matrix: Array
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if not (np.all(np.isfinite(mat.real)) and np.all(np.isfinite(mat.imag))):
            raise ValueError("density matrix contains non-finite entries")
        if int(np.prod(self.dims)) != mat.shape[0]:
            raise ValueError(f"dims {self.dims} do not match dimension {mat.shape[0]}")
        if np.abs(mat - mat.conj().T).max() > TOL_HERM:
            raise ValueError("density matrix is not Hermitian within tolerance")
        if abs(np.trace(mat).real - 1.0) > TOL_TRACE or abs(np.trace(mat).imag) > TOL_TRACE:
            raise ValueError(f"density matrix trace {np.trace(mat)} is not 1")
        if np.linalg.eigvalsh(mat).min() < -TOL_PSD:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def eig_hermitian(H) -> tuple[Array, Array]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues descending, eigenvectors as columns in matching order).
    """
    mat = _as_matrix(H)
    if np.abs(mat - mat.conj().T).max() > TOL_HERM:
        raise ValueError("eig_hermitian requires a Hermitian matrix")
    evals, vecs = np.linalg.eigh(mat)
    order = np.argsort(evals)[::-1]
    return evals[order], vecs[:, order]


def kron(A, B) -> Array:
    """Kronecker product."""
    return np.kron(_as_matrix(A), _as_matrix(B))


def trace_norm(A) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    mat = _as_matrix(A)
    if np.abs(mat - mat.conj().T).max() > TOL_HERM:
        raise ValueError("trace_norm requires a Hermitian matrix")
    return float(np.abs(np.linalg.eigvalsh(mat)).sum())


def trace_distance(rho, sigma) -> float:
    """Trace distance D = ||rho - sigma||_1 / 2."""
    a, b = _as_matrix(rho), _as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return 0.5 * trace_norm(a - b)


def psd_sqrt(A) -> Array:
    """Matrix square root of a PSD matrix.

    Eigenvalues below TOL_PSD are treated as exact zeros: a unit-trace matrix
    cannot distinguish them from rounding noise, and letting them through the
    square root would inject sqrt(eps)-scale garbage into fidelities.
    """
    evals, vecs = np.linalg.eigh(_as_matrix(A))
    evals = np.where(evals < TOL_PSD, 0.0, evals)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity F = Tr sqrt(sqrt(rho) sigma sqrt(rho)).

    Computed as the nuclear norm of sqrt(rho) @ sqrt(sigma): singular values
    carry absolute eigensolver accuracy, while forming the inner product
    matrix first would square the noise floor and then take its square root.
    """
    a, b = _as_matrix(rho), _as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    sv = np.linalg.svd(psd_sqrt(a) @ psd_sqrt(b), compute_uv=False)
    return min(float(sv.sum()), 1.0)


def bures_distance(rho, sigma) -> float:
    """Bures distance d_B = sqrt(2 (1 - F))."""
    return float(np.sqrt(max(2.0 * (1.0 - fidelity(rho, sigma)), 0.0)))


def partial_trace(state, keep, dims=None):
    """Trace out all subsystems except those in `keep` (order preserved).

    `state` may be a DensityMatrix (dims taken from it, DensityMatrix
    returned) or a raw square array with explicit `dims`.
    """
    if isinstance(state, DensityMatrix):
        out = _partial_trace_array(state.matrix, state.dims, keep)
        return DensityMatrix(out, tuple(state.dims[k] for k in keep))
    if dims is None:
        raise ValueError("dims required for raw-array partial trace")
    return _partial_trace_array(np.asarray(state, dtype=complex), tuple(dims), keep)


def _partial_trace_array(mat, dims, keep) -> Array:
    n = len(dims)
    keep = list(keep)
    if any(k < 0 or k >= n for k in keep) or len(set(keep)) != len(keep):
        raise ValueError(f"invalid subsystem selection {keep} for {n} subsystems")
    tensor = mat.reshape(dims + dims)
    traced = sorted((i for i in range(n) if i not in keep), reverse=True)
    remaining = n
    for i in traced:
        tensor = np.trace(tensor, axis1=i, axis2=i + remaining)
        remaining -= 1
    # remaining axes follow increasing original index; permute to `keep` order
    inc = sorted(keep)
    perm = [inc.index(k) for k in keep]
    m = len(keep)
    tensor = tensor.transpose(perm + [m + p for p in perm])
    d_out = int(np.prod([dims[k] for k in keep]))
    return tensor.reshape(d_out, d_out)


def relative_entropy(rho, sigma) -> float:
    """Relative entropy S(rho||sigma) = Tr[rho (log2 rho - log2 sigma)] in bits.

    Returns +inf when the support of rho is not contained in the support of
    sigma (weight above TOL_PSD on a sigma eigenvector whose eigenvalue is
    below TOL_PSD).
    """
    a, b = _as_matrix(rho), _as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    s_vals, s_vecs = np.linalg.eigh(b)
    weights = np.einsum("ij,jk,ki->i", s_vecs.conj().T, a, s_vecs).real
    weights = np.clip(weights, 0.0, None)
    for s, w in zip(s_vals, weights):
        if s < TOL_PSD and w > TOL_PSD:
            return float("inf")
    r_vals = np.linalg.eigvalsh(a)
    ent_rho = sum(r * np.log2(r) for r in r_vals if r > TOL_PSD)
    cross = sum(w * np.log2(s) for s, w in zip(s_vals, weights) if w > TOL_PSD)
    value = float(ent_rho - cross)
    return max(value, 0.0) if value > -TOL_NUM else value
