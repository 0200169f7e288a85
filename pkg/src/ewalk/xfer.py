"""Transfer matrices, cocycle products, and growth-rate estimators.

Solutions of W psi = z psi propagate pairwise,

    (psi_{2x+1}, psi_{2x+2}) = T_x(theta, z) (psi_{2x-1}, psi_{2x}),

with the 2x2 matrix built in :func:`transfer_matrix`.  Everything here
averages over the offset theta on deterministic grids theta_k = 2 pi k / K
(variance-free for smooth integrands and bit-reproducible), and products are
renormalized so their log norms stay exact for arbitrarily many factors.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import get_backend
from . import numtheory
from .walk import WalkSpec

TWO_PI = 2.0 * np.pi

# conjugation between the unimodular-unitary class and real 2x2 matrices
_Q = -(1.0 / (1.0 + 1j)) * np.array([[1.0, -1j], [1.0, 1j]])


class DiophantinePreconditionError(ValueError):
    """Raised when an operation requires a Diophantine field and the finite
    check fails."""


@dataclass
class Cocycle2x2:
    """A 2x2 complex matrix stored as mat * exp(log_scale).

    Renormalized products keep ``mat``'s Frobenius norm in [1/2, 2] so that
    norms of arbitrarily long products stay representable; ``log_scale``
    carries the exact accumulated factor.
    """

    mat: np.ndarray
    log_scale: float = 0.0

    def __post_init__(self):
        self.mat = np.asarray(self.mat, dtype=np.complex128).reshape(2, 2)

    @classmethod
    def identity(cls) -> "Cocycle2x2":
        return cls(np.eye(2, dtype=np.complex128))

    def full(self) -> np.ndarray:
        """The represented matrix (may overflow for huge log_scale)."""
        return np.exp(self.log_scale) * self.mat

    def norm(self) -> float:
        return float(np.exp(self.log_scale) * np.linalg.norm(self.mat, 2))

    def log_norm(self) -> float:
        return self.log_scale + math.log(np.linalg.norm(self.mat, 2))

    def det(self) -> complex:
        m = self.mat
        return complex(np.exp(2.0 * self.log_scale)
                       * (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))

    def __matmul__(self, other: "Cocycle2x2") -> "Cocycle2x2":
        m = self.mat @ other.mat
        scale = self.log_scale + other.log_scale
        fro = float(np.linalg.norm(m))
        if fro > 2.0 or fro < 0.5:
            m = m / fro
            scale += math.log(fro)
        return Cocycle2x2(m, scale)


def transfer_matrix(spec: WalkSpec, x: int, z: complex) -> Cocycle2x2:
    """The 2x2 propagator of generalized eigenvectors across cell x.

    Returns (1/a) [[e^{i(x field + offset)} / z, -conj(b)],
                   [-b, z e^{-i(x field + offset)}]].

    Raises for completely off-diagonal cell operators (a = 0): the pair
    recursion divides by a, and that degenerate case traps the walker anyway.
    """
    cn = spec.coin
    if abs(cn.a) == 0.0:
        raise ValueError("off-diagonal cell operator (a = 0): transfer "
                         "matrices are undefined; the walk is a direct sum of "
                         "reflections")
    z = complex(z)
    if z == 0:
        raise ValueError("spectral parameter must be nonzero")
    ph = spec.cell_phase(x)
    mat = np.array([[ph / z, -np.conj(cn.b)], [-cn.b, z / ph]]) / cn.a
    return Cocycle2x2(mat)


def cocycle_product(spec: WalkSpec, z: complex, theta_start: float,
                    n: int) -> Cocycle2x2:
    """Renormalized product T_n ... T_1 at offset ``theta_start``.

    ``theta_start`` replaces the offset stored in ``spec``; the x-th factor
    carries the phase e^{i(x field + theta_start)}.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    cn = spec.coin
    if abs(cn.a) == 0.0:
        raise ValueError("off-diagonal cell operator (a = 0)")
    if z == 0:
        raise ValueError("spectral parameter must be nonzero")
    kern = get_backend()
    m, log_scale = kern.cocycle_matrix(complex(cn.a), complex(cn.b), complex(z),
                                       float(spec.field), float(theta_start), int(n))
    return Cocycle2x2(m, float(log_scale))


@dataclass
class LyapunovEstimate:
    """Finite-step growth rate (1/n) E_theta log ||T_n ... T_1||, nats/cell."""

    n: int
    gamma_n: float
    stderr: float
    sample_count: int


def _theta_grid(samples: int) -> np.ndarray:
    return TWO_PI * np.arange(samples) / samples


def _lognorm_batch(spec: WalkSpec, z: complex, thetas: np.ndarray, n: int) -> np.ndarray:
    cn = spec.coin
    if abs(cn.a) == 0.0:
        raise ValueError("off-diagonal cell operator (a = 0)")
    kern = get_backend()
    return kern.cocycle_lognorms(complex(cn.a), complex(cn.b), complex(z),
                                 float(spec.field), np.asarray(thetas, float), int(n))


_gamma_cache: dict = {}


def finite_lyapunov(spec: WalkSpec, z: complex, n: int,
                    theta_samples: int) -> LyapunovEstimate:
    """Growth-rate estimate averaged over an equidistributed offset grid.

    The offset stored in ``spec`` is ignored; the average runs over
    theta_k = 2 pi k / K.  For |z| = 1 the result does not depend on z (the
    factors depend only on e^{i theta}/z, and the integral over theta absorbs
    the rotation), so estimates are cached with the z dependence dropped on
    the unit circle.
    """
    if n < 1 or theta_samples < 1:
        raise ValueError("need n >= 1 and theta_samples >= 1")
    z = complex(z)
    on_circle = abs(abs(z) - 1.0) < 1e-12
    zkey = None if on_circle else z
    key = (complex(spec.coin.a), complex(spec.coin.b), float(spec.field),
           int(n), int(theta_samples), zkey)
    hit = _gamma_cache.get(key)
    if hit is not None:
        return hit
    logs = _lognorm_batch(spec, z, _theta_grid(theta_samples), n) / n
    est = LyapunovEstimate(
        n=int(n),
        gamma_n=float(np.mean(logs)),
        stderr=float(np.std(logs) / math.sqrt(theta_samples)),
        sample_count=int(theta_samples),
    )
    _gamma_cache[key] = est
    return est


def su11_to_sl2r(t: Cocycle2x2, z: complex) -> Cocycle2x2:
    """Conjugate a unimodular-unitary 2x2 matrix to its real form.

    The input is normalized by det^{-1/2} first; for |z| = 1 the normalized
    transfer matrices satisfy m* sigma3 m = sigma3 (up to sign) and the fixed
    unitary conjugation Q turns them into real matrices of determinant one.
    Raises if |z| != 1 or if the conjugated matrix fails to be real
    unimodular at 1e-12.
    """
    if abs(abs(complex(z)) - 1.0) > 1e-12:
        raise ValueError("spectral parameter must lie on the unit circle")
    m = t.mat
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-300:
        raise ValueError("singular matrix")
    mt = m / np.sqrt(det)
    out = _Q.conj().T @ mt @ _Q
    scale = max(float(np.abs(out).max()), 1.0)
    if np.abs(out.imag).max() > 1e-12 * scale:
        raise ValueError("matrix is not in the unimodular-unitary class: "
                         "conjugation did not produce a real matrix")
    outdet = out[0, 0] * out[1, 1] - out[0, 1] * out[1, 0]
    if abs(outdet - 1.0) > 1e-12:
        raise ValueError("conjugated matrix is not unimodular")
    return Cocycle2x2(out.real.astype(np.complex128), t.log_scale)


def herman_avila_bochi_check(spec: WalkSpec, n: int, theta_samples: int,
                             z_samples: int) -> tuple[float, float]:
    """Both sides of the rotated-cocycle average identity.

    lhs: the growth-rate estimate averaged over a grid of spectral parameters
    on the unit circle (equivalently, over offsets).  rhs: the offset average
    of log((||A|| + ||A||^{-1})/2) for the real conjugate A of the one-step
    transfer matrix, evaluated numerically; for these cocycles
    ||A|| + ||A||^{-1} = 2/|a| identically, so rhs = log(1/|a|).
    """
    zs = np.exp(1j * _theta_grid(z_samples))
    lhs = float(np.mean([finite_lyapunov(spec, z, n, theta_samples).gamma_n
                         for z in zs]))
    vals = []
    for theta in _theta_grid(theta_samples):
        t = transfer_matrix(spec.with_offset(theta), 0, 1.0)
        amat = su11_to_sl2r(t, 1.0)
        nrm = float(np.linalg.norm(amat.mat, 2))
        vals.append(math.log(0.5 * (nrm + 1.0 / nrm)))
    rhs = float(np.mean(vals))
    return lhs, rhs


def orbit_average(spec: WalkSpec, z: complex, n: int, J: int,
                  exponent: float = 2.0) -> float:
    """Average of (1/n) log ||T_n ... T_1|| along the orbit theta + j field.

    Warns when J <= n^{2 A}: the orbit-average error bound O(1/n) is only
    guaranteed for longer orbits under the finite Diophantine condition with
    exponent A.
    """
    if n < 1 or J < 1:
        raise ValueError("need n >= 1 and J >= 1")
    if J <= n ** (2.0 * exponent):
        warnings.warn(f"orbit length J={J} is below n^(2A)={n ** (2.0 * exponent):.3g}; "
                      "the O(1/n) guarantee does not apply", stacklevel=2)
    thetas = spec.offset + spec.field * np.arange(1, J + 1)
    logs = _lognorm_batch(spec, z, thetas, n) / n
    return float(np.mean(logs))


def deviation_measure(spec: WalkSpec, z: complex, n: int, kappa: float,
                      theta_samples: int) -> float:
    """Fraction of the offset grid where (1/n) log ||prod|| leaves the
    kappa-band around its grid mean."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    logs = _lognorm_batch(spec, z, _theta_grid(theta_samples), n) / n
    gamma_n = float(np.mean(logs))
    return float(np.mean(np.abs(logs - gamma_n) > kappa))


def lyap_upper_bound_check(spec: WalkSpec, z: complex, n: int, kappa: float,
                           theta_samples: int, bound_constant: float = 1.0,
                           dio_c: float = 0.1, dio_exponent: float = 2.0,
                           dio_kmax: int = 10000) -> bool:
    """Check (1/n) log ||T_n ... T_1|| < gamma_n + kappa C on the offset grid.

    Requires the field to pass the finite Diophantine scan first; raises
    :class:`DiophantinePreconditionError` otherwise (for fields that fail the
    scan the bound carries no guarantee and is not asserted).
    """
    report = numtheory.diophantine_check(spec.field, dio_c, dio_exponent, dio_kmax)
    if not report.ok:
        raise DiophantinePreconditionError(
            f"field fails the finite Diophantine condition at k={report.worst_k}")
    logs = _lognorm_batch(spec, z, _theta_grid(theta_samples), n) / n
    gamma_n = float(np.mean(logs))
    return bool(np.max(logs) < gamma_n + kappa * bound_constant)


def strip_growth_constant(a_mod: float, rho: float) -> float:
    """log(2 / sup) with sup = a e^rho the analytic-strip bound on |a(.)|,
    i.e. log 2 - log a - rho.

    See also :func:`strip_growth_constant_literal`: the two published readings
    of this constant disagree (rho vs log rho in the last term); both are
    exposed and neither is silently substituted for the other.
    """
    return math.log(2.0) - math.log(a_mod) - rho


def strip_growth_constant_literal(a_mod: float, rho: float) -> float:
    """The variant reading log 2 - log a - log rho (see
    :func:`strip_growth_constant`)."""
    return math.log(2.0) - math.log(a_mod) - math.log(rho)
