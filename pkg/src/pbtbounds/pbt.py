"""Port-based teleportation as a channel simulator.

Closed-form quantities for the qubit square-root-measurement protocol with M
ports: the depolarizing probability xi_M, the entanglement fidelity f_e, the
diamond-norm simulation errors delta_M and Delta_M(p), and the Choi matrices
of the simulated channels.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, exp, lgamma, log, sqrt

import numpy as np

from .channels import ChoiMatrix, KrausChannel, apply_to_subsystem
from .linalg import TOL_NUM, DensityMatrix, partial_trace, trace_norm

# Exact integer binomials up to this M; log-gamma above (overflow safety for
# scaling sweeps, where C(M, M/2) exceeds float range long before M ~ 1100).
_EXACT_COMB_MAX = 50


def _comb_over_pow2(M: int, k: int, e: int) -> float:
    """C(M, k) / 2^e without overflow."""
    if M <= _EXACT_COMB_MAX:
        return comb(M, k) / 2.0**e
    logc = lgamma(M + 1) - lgamma(k + 1) - lgamma(M - k + 1)
    return exp(logc - e * log(2.0))


def _check_ports(M: int) -> None:
    if not isinstance(M, (int, np.integer)) or M < 2:
        raise ValueError(f"port count {M} must be an integer >= 2")


def xi(M: int) -> float:
    """Depolarizing probability of the M-port qubit protocol.

    The spin index s runs in unit steps from 1/2 (even M) or 0 (odd M)
    up to (M-1)/2, so the binomial argument (M-1)/2 - s is always a
    nonnegative integer.
    """
    _check_ports(M)
    total = (M + 2) * _comb_over_pow2(M, 0, M - 1) / 3.0
    s = 0.5 if M % 2 == 0 else 0.0
    while s <= (M - 1) / 2 + 1e-9:
        k = round((M - 1) / 2 - s)
        gap = (M + 2) ** 2 - (2 * s + 1) ** 2
        term = s * (s + 1) / 3.0 * _comb_over_pow2(M, k, M - 4)
        term *= ((M + 2) - sqrt(gap)) / gap
        total += term
        s += 1.0
    return total


def entanglement_fidelity_qubit(M: int) -> float:
    """Entanglement fidelity of the M-port qubit protocol (binomial sum)."""
    _check_ports(M)
    total = 0.0
    for k in range(M + 1):
        t = (M - 2 * k - 1) / sqrt(k + 1) + (M - 2 * k + 1) / sqrt(M - k + 1)
        total += t * t * _comb_over_pow2(M, k, M + 3)
    return total


def delta_exact_qubit(M: int) -> float:
    """Diamond-norm distance between the identity and the M-port channel (d=2)."""
    return 1.5 * xi(M)


def delta_upper(M: int, d: int) -> float:
    """Dimension-general upper bound 2d(d-1)/M on the simulation error."""
    _check_ports(M)
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise ValueError(f"dimension {d} must be an integer >= 2")
    return 2.0 * d * (d - 1) / M


@dataclass(frozen=True)
class PbtQuantities:
    """Simulation-error summary for one (M, d) pair.

    provenance records how delta was obtained: 'closed_form' (qubit exact),
    'upper_bound' (the 2d(d-1)/M bound, the only handle for d > 2), or
    'oracle' (brute-force construction).
    """

    M: int
    d: int
    xi: float | None
    f_e: float
    delta: float
    provenance: str

    def __post_init__(self):
        _check_ports(self.M)
        if self.d < 2:
            raise ValueError(f"dimension {self.d} must be at least 2")
        if self.provenance not in ("closed_form", "upper_bound", "oracle"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.d == 2 and self.xi is not None:
            if abs(self.delta - 1.5 * self.xi) > TOL_NUM:
                raise ValueError("qubit delta must equal (3/2) xi")
            if abs(self.f_e + self.delta / 2.0 - 1.0) > TOL_NUM:
                raise ValueError("qubit f_e + delta/2 must equal 1")
        if self.delta > 2.0 * self.d * (self.d - 1) / self.M + TOL_NUM:
            raise ValueError("delta exceeds the 2d(d-1)/M bound")


def pbt_quantities(M: int, d: int = 2) -> PbtQuantities:
    """Closed-form quantities for qubits; the generic bound otherwise."""
    _check_ports(M)
    if d == 2:
        x = xi(M)
        return PbtQuantities(M, 2, x, entanglement_fidelity_qubit(M), 1.5 * x, "closed_form")
    dl = delta_upper(M, d)
    return PbtQuantities(M, d, None, 1.0 - dl / 2.0, dl, "upper_bound")


def pbt_choi_qubit(M: int) -> ChoiMatrix:
    """Choi matrix of the M-port qubit channel (isotropic form in xi_M)."""
    _check_ports(M)
    x = xi(M)
    mat = np.diag([0.5 - x / 4, x / 4, x / 4, 0.5 - x / 4]).astype(complex)
    mat[0, 3] = mat[3, 0] = 0.5 - x / 2
    return ChoiMatrix(DensityMatrix(mat, (2, 2)))


def simulate_channel_choi(ch: KrausChannel, M: int) -> ChoiMatrix:
    """Choi matrix of the M-port simulation of a qubit channel.

    The simulation composes the channel after the PBT map, so its Choi state
    is the channel applied to the output half of the PBT Choi state.
    """
    if ch.d_in != 2:
        raise ValueError(f"simulation handles qubit input channels only, got d_in={ch.d_in}")
    base = pbt_choi_qubit(M).state
    return ChoiMatrix(apply_to_subsystem(ch, base, 1))


def diamond_via_choi_scalar_check(choi_a: ChoiMatrix, choi_b: ChoiMatrix) -> float | None:
    """Diamond distance of two channels from their Choi matrices, when exact.

    For J the Choi difference, the trace norm ||J||_1 lower-bounds the diamond
    distance and equals it when the reference marginal of |J| is scalar.
    Returns None when the scalar criterion fails; no SDP fallback is provided.
    """
    if choi_a.state.dims != choi_b.state.dims:
        raise ValueError("Choi matrices must share dimensions")
    J = choi_a.matrix - choi_b.matrix
    evals, vecs = np.linalg.eigh(J)
    absJ = (vecs * np.abs(evals)) @ vecs.conj().T
    marg = partial_trace(absJ, [0], dims=choi_a.state.dims)
    d_in = choi_a.d_in
    c = np.trace(marg).real / d_in
    if np.abs(marg - c * np.eye(d_in)).max() > TOL_NUM:
        return None
    return trace_norm(J)


def delta_ad(M: int, p: float) -> float:
    """Diamond-norm error of the M-port simulation of amplitude damping."""
    _check_ports(M)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"damping probability {p} outside [0, 1]")
    return xi(M) * ((1.0 - p) / 2.0 + sqrt(1.0 - p))
