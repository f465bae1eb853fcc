"""Application bounds: optical resolution, quantum illumination, metrology,
and secret-key rates.

Each application reduces to channel discrimination or parameter estimation on
Choi matrices; the discrimination module supplies the generic bound machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, exp, inf, isfinite, log2, sqrt

import numpy as np

from .discrimination import BoundReport, _report
from .linalg import TOL_NUM, DensityMatrix, fidelity


# ---------------------------------------------------------------------------
# single-photon optical resolution

@dataclass(frozen=True)
class ResolutionParams:
    """Loss eta, separation s (Rayleigh units), probe count n.

    delta_overlap is the Gaussian point-spread overlap exp(-s^2/8); it may be
    supplied explicitly but must then match s.
    """

    eta: float
    s: float
    n: int
    delta_overlap: float | None = None

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"loss parameter {self.eta} outside (0, 1]")
        if self.s < 0.0:
            raise ValueError(f"separation {self.s} must be nonnegative")
        if self.n < 1:
            raise ValueError(f"probe count {self.n} must be >= 1")
        delta = exp(-self.s**2 / 8.0)
        if self.delta_overlap is None:
            object.__setattr__(self, "delta_overlap", delta)
        elif abs(self.delta_overlap - delta) > TOL_NUM:
            raise ValueError(f"overlap {self.delta_overlap} inconsistent with s={self.s}")


def resolution_chois(eta: float, s: float) -> tuple[DensityMatrix, DensityMatrix]:
    """Choi matrices of the two source-position channels.

    Space: qubit reference tensor qutrit output ordered {vacuum, 1+, 1-},
    where 1+/1- are the symmetric/antisymmetric single-photon modes. Each
    state mixes the surviving branch |Psi+-> with the photon-loss branch.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"loss parameter {eta} outside (0, 1]")
    if s < 0.0:
        raise ValueError(f"separation {s} must be nonnegative")
    delta = exp(-s * s / 8.0)
    eta_p = (1.0 + delta) * eta / 2.0
    eta_m = (1.0 - delta) * eta / 2.0
    lost = np.zeros(6, dtype=complex)
    lost[0] = 1.0  # |0>|vacuum>
    states = []
    for sign in (+1.0, -1.0):
        psi = np.zeros(6, dtype=complex)
        psi[3] = 1.0  # |1>|vacuum>
        psi[1] = sqrt(eta_p)  # |0>|1+>
        psi[2] = sign * sqrt(eta_m)  # |0>|1->
        psi /= sqrt(1.0 + eta)
        mat = (1.0 + eta) / 2.0 * np.outer(psi, psi.conj())
        mat += (1.0 - eta) / 2.0 * np.outer(lost, lost.conj())
        states.append(DensityMatrix(mat, (2, 3)))
    return states[0], states[1]


def resolution_fidelity(eta: float, s: float) -> float:
    """Closed-form Choi fidelity 1 - eta (1 - exp(-s^2/8)) / 2."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"loss parameter {eta} outside (0, 1]")
    if s < 0.0:
        raise ValueError(f"separation {s} must be nonnegative")
    return 1.0 - eta * (1.0 - exp(-s * s / 8.0)) / 2.0


def resolution_bound(n: int, eta: float, s: float) -> BoundReport:
    """Adaptive error lower bound exp(-2 n s sqrt(eta)) / 4 (small-s form).

    params carry the unapproximated near-identity values at the exact
    infidelity eps = eta (1 - exp(-s^2/8)) / 2: the exponential surrogate
    exp(-8 n sqrt(eps)) / 4 ('exact_value', always >= the small-s form) and
    the linear form, plus a regime flag for eps_small = eta s^2/16 <= 0.01.
    """
    if n < 1:
        raise ValueError(f"probe count {n} must be >= 1")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"loss parameter {eta} outside (0, 1]")
    if s < 0.0:
        raise ValueError(f"separation {s} must be nonnegative")
    raw = exp(-2.0 * n * s * sqrt(eta)) / 4.0
    eps = eta * (1.0 - exp(-s * s / 8.0)) / 2.0
    x = n * sqrt(4.0 * eps)  # 2d(d-1) = 4 for the qubit reference
    params = {
        "n": n,
        "eta": eta,
        "s": s,
        "epsilon": eps,
        "exact_value": exp(-4.0 * x) / 4.0,
        "linear_value": max(0.25 - x, 0.0),
        "regime_ok": eta * s * s / 16.0 <= 0.01,
    }
    return _report("resolution_bound", raw, params)


# ---------------------------------------------------------------------------
# discrete-variable quantum illumination

@dataclass(frozen=True)
class IlluminationParams:
    """Signal/idler mode count d, target reflectivity eta, thermal photons b."""

    d: int
    eta: float
    b: float
    n: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"mode count {self.d} must be >= 1")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"reflectivity {self.eta} outside [0, 1]")
        if self.b < 0.0 or self.d * self.b >= 1.0:
            raise ValueError(f"thermal occupation b={self.b} needs 0 <= d*b < 1")
        if self.n < 1:
            raise ValueError(f"probe count {self.n} must be >= 1")


def _check_illumination(d: int, eta: float, b: float) -> None:
    IlluminationParams(d, eta, b, 1)


def illumination_chois(d: int, eta: float, b: float) -> tuple[DensityMatrix, DensityMatrix]:
    """Target-absent and target-present states on (signal, idler).

    Absent: thermal signal (1-db)|0><0| + b sum_k |k><k| with a maximally
    mixed idler. Present: reflectivity-eta mixture with the maximally
    entangled single-photon state over d+1 levels.
    """
    _check_illumination(d, eta, b)
    D = d + 1
    thermal = np.diag([1.0 - d * b] + [b] * d).astype(complex)
    sigma = np.kron(thermal, np.eye(D) / D)
    psi = np.eye(D, dtype=complex).reshape(D * D) / sqrt(D)
    rho = (1.0 - eta) * sigma + eta * np.outer(psi, psi.conj())
    return DensityMatrix(sigma, (D, D)), DensityMatrix(rho, (D, D))


def _illumination_fidelity_structured(d: int, eta: float, b: float) -> float:
    """Fidelity from the eigenvalue families of sqrt(sigma) rho sqrt(sigma).

    The product basis splits into d^2 states |k j> (k >= 1, j != k), d states
    |0 j> (j != 0), and the (d+1)-dimensional span of the |k k>, which carries
    a rank-one entangled piece on top of the diagonal thermal weights.
    """
    D = d + 1
    x2 = 1.0 - b * d  # vacuum weight of the thermal signal
    evs = [(1.0 - eta) * b * b / D**2] * (d * d)
    evs += [(1.0 - eta) * x2 * x2 / D**2] * d
    block = np.zeros((D, D))
    block[0, 0] = (1.0 - eta) * x2 * x2 + eta * x2
    for j in range(1, D):
        block[0, j] = block[j, 0] = eta * sqrt(x2 * b)
        block[j, j] = (1.0 - eta) * b * b + eta * b
        for k in range(1, D):
            if k != j:
                block[j, k] = eta * b
    evs += list(np.linalg.eigvalsh(block) / D**2)
    return float(np.sum(np.sqrt(np.maximum(evs, 0.0))))


def illumination_fidelity_exact(d: int, eta: float, b: float, method: str = "auto") -> float:
    """Fidelity of the target-absent/present pair.

    method 'generic' diagonalizes the full (d+1)^2 problem, 'structured' uses
    the closed eigenvalue families (identical to 1e-10; only a (d+1)-dim
    eigensolve), 'auto' picks structured for d > 8.
    """
    _check_illumination(d, eta, b)
    if method not in ("auto", "structured", "generic"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "structured" if d > 8 else "generic"
    if method == "structured":
        return _illumination_fidelity_structured(d, eta, b)
    sigma, rho = illumination_chois(d, eta, b)
    return fidelity(sigma, rho)


def illumination_fidelity_approx(d: int, eta: float, b: float) -> float:
    """Leading-order fidelity 1 - (eta d + 2b - 2 sqrt(eta d b)) / (2(d+1))."""
    _check_illumination(d, eta, b)
    return 1.0 - (eta * d + 2.0 * b - 2.0 * sqrt(eta * d * b)) / (2.0 * (d + 1))


def illumination_regime_ok(d: int, eta: float, b: float) -> bool:
    """Leading-order expansion is trustworthy only for eta, b <= 0.05."""
    return eta <= 0.05 and b <= 0.05


def illumination_bound(n: int, d: int, eta: float) -> BoundReport:
    """Adaptive error lower bound exp(-4 n d sqrt(eta)) / 4.

    Derived in the bright-idler regime b = eta d; params carry the
    separable-probe reference error exp(-n eta / (8d)) / 2, which upper-bounds
    what unentangled probes achieve.
    """
    if n < 1:
        raise ValueError(f"probe count {n} must be >= 1")
    if d < 1:
        raise ValueError(f"mode count {d} must be >= 1")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"reflectivity {eta} outside [0, 1]")
    raw = exp(-4.0 * n * d * sqrt(eta)) / 4.0
    separable = exp(-n * eta / (8.0 * d)) / 2.0
    params = {"n": n, "d": d, "eta": eta, "separable_upper": separable}
    return _report("illumination_bound", raw, params)


# ---------------------------------------------------------------------------
# adaptive quantum metrology

@dataclass(frozen=True)
class QfiEstimate:
    """Richardson-refined finite-difference QFI with its step diagnostics."""

    value: float
    step_sensitivity: float  # |q(h/2) - q(h)| / q(h), 0 for a constant family
    coarse: float
    fine: float


def _qfi_single_step(choi_at, theta: float, h: float) -> float:
    """4 d_B^2(rho(theta-h/2), rho(theta+h/2)) / h^2."""
    a = choi_at(theta - h / 2.0)
    b = choi_at(theta + h / 2.0)
    F = fidelity(getattr(a, "matrix", a), getattr(b, "matrix", b))
    if not isfinite(F):
        raise ValueError("fidelity of the channel family is not finite")
    return 8.0 * (1.0 - F) / h**2


def qfi_choi(choi_at, theta: float, dtheta: float = 1e-3) -> QfiEstimate:
    """Quantum Fisher information of a Choi-matrix family at theta.

    Central Bures-distance differences at steps dtheta and dtheta/2 combined
    by Richardson extrapolation; the relative change between the two steps is
    reported so callers can see discretization trouble.
    """
    if dtheta <= 0.0:
        raise ValueError(f"step {dtheta} must be positive")
    coarse = _qfi_single_step(choi_at, theta, dtheta)
    fine = _qfi_single_step(choi_at, theta, dtheta / 2.0)
    value = (4.0 * fine - coarse) / 3.0
    sensitivity = abs(fine - coarse) / coarse if coarse > 0.0 else 0.0
    return QfiEstimate(value, sensitivity, coarse, fine)


@dataclass(frozen=True)
class MetrologyBound:
    """Adaptive-protocol QFI ceiling and the matching variance floor."""

    qfi_upper: float
    variance_floor: float


def metrology_bound(n: int, qfi_choi_value: float) -> MetrologyBound:
    """QFI after n adaptive uses is at most n^2 times the Choi QFI."""
    if n < 1:
        raise ValueError(f"use count {n} must be >= 1")
    if qfi_choi_value < 0.0:
        raise ValueError(f"QFI {qfi_choi_value} must be nonnegative")
    ceiling = n * n * qfi_choi_value
    return MetrologyBound(ceiling, 1.0 / ceiling if ceiling > 0.0 else inf)


# ---------------------------------------------------------------------------
# secret-key-rate upper bounds

@dataclass(frozen=True)
class KeyRateParams:
    """Channel dimension d, Choi entanglement value e_r (bits), measure, uses.

    measure picks the (g, h) pair: 'REE' for relative entropy of
    entanglement, 'SE' for squashed entanglement. c caps the private-state
    dimension via log2(d_key) = c n; the protocol constant is not fixed by
    theory, so it stays an input.
    """

    d: int
    e_r: float
    measure: str = "REE"
    n: int = 1
    epsilon: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"dimension {self.d} must be >= 2")
        if self.e_r < 0.0:
            raise ValueError(f"entanglement value {self.e_r} must be nonnegative")
        if self.measure not in ("REE", "SE"):
            raise ValueError(f"unknown entanglement measure {self.measure!r}")
        if self.n < 1:
            raise ValueError(f"use count {self.n} must be >= 1")
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError(f"security parameter {self.epsilon} outside [0, 1)")
        if self.c <= 0.0:
            raise ValueError(f"dimension constant {self.c} must be positive")


def binary_entropy(x: float) -> float:
    """H2(x) in bits; 0 at the endpoints."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


@dataclass(frozen=True)
class KeyRateBound:
    """Key-rate bound value; invalid (value inf) when gamma leaves [0, 1]."""

    value: float
    valid: bool
    params: dict = field(default_factory=dict)


def key_rate_bound_finite(params: KeyRateParams, M: int, delta: float) -> KeyRateBound:
    """Finite-size rate bound M e_r + [g(gamma) c n + h(gamma)] / n.

    gamma = n delta + epsilon. (g, h) = (4 gamma, 2 H2(gamma)) for REE and
    (16 sqrt(gamma), 2 H2(2 sqrt(gamma))) for SE; the bound is only defined
    while the H2 argument stays in [0, 1], flagged invalid otherwise.
    """
    if M < 2:
        raise ValueError(f"port count {M} must be >= 2")
    if delta < 0.0:
        raise ValueError(f"simulation error {delta} must be nonnegative")
    gamma = params.n * delta + params.epsilon
    report = {"M": M, "delta": delta, "gamma": gamma, "measure": params.measure}
    h2_arg = gamma if params.measure == "REE" else 2.0 * sqrt(gamma)
    if h2_arg > 1.0:
        return KeyRateBound(inf, False, report)
    if params.measure == "REE":
        g, h = 4.0 * gamma, 2.0 * binary_entropy(gamma)
    else:
        g, h = 16.0 * sqrt(gamma), 2.0 * binary_entropy(2.0 * sqrt(gamma))
    value = M * params.e_r + (g * params.c * params.n + h) / params.n
    return KeyRateBound(value, True, report)


def key_rate_bound_asymptotic(d: int, e_r: float, M: float) -> float:
    """Asymptotic bound M e_r + (2d(d-1)/M) log2 d + f(d(d-1)/M).

    f(eps) = (1+eps) log2(1+eps) - eps log2 eps. M may be fractional so the
    analytic port choice m_tilde can be evaluated directly.
    """
    if d < 2:
        raise ValueError(f"dimension {d} must be >= 2")
    if e_r < 0.0:
        raise ValueError(f"entanglement value {e_r} must be nonnegative")
    if M < 2:
        raise ValueError(f"port count {M} must be >= 2")
    eps = d * (d - 1) / M
    f = (1.0 + eps) * log2(1.0 + eps) - eps * log2(eps)
    return M * e_r + (2.0 * d * (d - 1) / M) * log2(d) + f


def m_tilde(d: int, e_r: float) -> float:
    """Near-optimal port count sqrt(2 d(d-1) log2(d) / e_r)."""
    if d < 2:
        raise ValueError(f"dimension {d} must be >= 2")
    if e_r <= 0.0:
        raise ValueError(f"entanglement value {e_r} must be positive")
    return sqrt(2.0 * d * (d - 1) * log2(d) / e_r)


def key_rate_minimize_m(
    d: int, e_r: float, M_grid: list[int] | None = None
) -> tuple[int, float]:
    """Scan a port-count grid for the smallest asymptotic bound.

    Default grid runs from 2 to 4 m_tilde, wide enough to bracket the interior
    minimum; e_r = 0 has no finite minimizer, so a grid must then be given.
    """
    if M_grid is None:
        if e_r <= 0.0:
            raise ValueError("supply M_grid explicitly when e_r = 0")
        M_grid = range(2, max(ceil(4.0 * m_tilde(d, e_r)), 8) + 1)
    if not M_grid:
        raise ValueError("port-count grid is empty")
    values = {M: key_rate_bound_asymptotic(d, e_r, M) for M in M_grid}
    best = min(values, key=values.get)
    return best, values[best]
