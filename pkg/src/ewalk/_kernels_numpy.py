"""Pure-numpy reference kernels for the hot inner loops.

These are the fallback implementations selected by ``EWALK_BACKEND=numpy``;
the numba twins in :mod:`ewalk._kernels_numba` compute the same quantities
loop-for-loop.  Both operate on plain float/complex scalars and 1-d arrays so
they can be swapped freely.
"""

from __future__ import annotations

import numpy as np

# Renormalization band for cocycle products: rescale the running 2x2 matrix
# whenever its Frobenius norm leaves [1/2, 2], accounting the factor in a log.
_RESCALE_LO = 0.5
_RESCALE_HI = 2.0


def cocycle_lognorms(a, b, z, phi, thetas, n):
    """log of the spectral norm of T_n ... T_1 for a batch of offsets.

    T_x(theta, z) = (1/a) [[e^{i(x phi + theta)} / z, -conj(b)],
                           [-b,  z e^{-i(x phi + theta)}]]

    Parameters
    ----------
    a, b : complex
        Cell operator entries (su2-reduced; |a|^2 + |b|^2 = 1, a != 0).
    z : complex
        Spectral parameter, z != 0.
    phi : float
        Field angle in radians.
    thetas : (K,) float array
        Offsets; one cocycle product is accumulated per offset.
    n : int
        Number of factors.

    Returns
    -------
    (K,) float array of log norms.  Rescaling keeps the running product's
    entries O(1), so n up to 1e7 cannot overflow and the log is exact up to
    rounding.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    K = thetas.shape[0]
    m11 = np.ones(K, dtype=np.complex128)
    m12 = np.zeros(K, dtype=np.complex128)
    m21 = np.zeros(K, dtype=np.complex128)
    m22 = np.ones(K, dtype=np.complex128)
    logs = np.zeros(K, dtype=np.float64)
    t12 = -np.conj(b) / a
    t21 = -b / a
    az = a * z
    z_over_a = z / a
    for x in range(1, n + 1):
        ph = np.exp(1j * (x * phi + thetas))
        t11 = ph / az
        t22 = z_over_a / ph
        n11 = t11 * m11 + t12 * m21
        n12 = t11 * m12 + t12 * m22
        n21 = t21 * m11 + t22 * m21
        n22 = t21 * m12 + t22 * m22
        fro2 = (n11.real**2 + n11.imag**2 + n12.real**2 + n12.imag**2
                + n21.real**2 + n21.imag**2 + n22.real**2 + n22.imag**2)
        mask = (fro2 > _RESCALE_HI**2) | (fro2 < _RESCALE_LO**2)
        if mask.any():
            s = np.sqrt(fro2[mask])
            logs[mask] += np.log(s)
            inv = 1.0 / s
            n11[mask] *= inv
            n12[mask] *= inv
            n21[mask] *= inv
            n22[mask] *= inv
        m11, m12, m21, m22 = n11, n12, n21, n22
    fro2 = (m11.real**2 + m11.imag**2 + m12.real**2 + m12.imag**2
            + m21.real**2 + m21.imag**2 + m22.real**2 + m22.imag**2)
    det = m11 * m22 - m12 * m21
    d2 = det.real**2 + det.imag**2
    disc = np.sqrt(np.maximum(fro2 * fro2 - 4.0 * d2, 0.0))
    sig2 = 0.5 * (fro2 + disc)
    return logs + 0.5 * np.log(sig2)


def cocycle_matrix(a, b, z, phi, theta, n):
    """Renormalized product T_n ... T_1 at a single offset.

    Returns ``(m, log_scale)``: the true product is ``exp(log_scale) * m``,
    with m's Frobenius norm kept inside the rescaling band.
    """
    m = np.eye(2, dtype=np.complex128)
    log_scale = 0.0
    t12 = -np.conj(b) / a
    t21 = -b / a
    for x in range(1, n + 1):
        ph = np.exp(1j * (x * phi + theta))
        t = np.array([[ph / (a * z), t12], [t21, z / (a * ph)]])
        m = t @ m
        fro = np.sqrt((m.real**2 + m.imag**2).sum())
        if fro > _RESCALE_HI or fro < _RESCALE_LO:
            m /= fro
            log_scale += np.log(fro)
    return m, log_scale


def evolve_steps(even, odd, act0, act1, a, b, c, d, phases, steps):
    """Advance an interleaved state by ``steps`` walk applications, in place.

    ``even[k]``/``odd[k]`` are the two internal components at allocation cell
    k; ``phases[k]`` is e^{i((k + cell_base) phi + theta)}.  The active window
    is ``[act0, act1]`` (inclusive) and grows by one cell per side per step;
    the caller guarantees ``act0 - steps >= 1`` and ``act1 + steps <= len - 2``.

    One step: even components move one cell left, odd components one cell
    right, then the phased cell operator mixes the two components per cell.

    Returns the new ``(act0, act1)``.
    """
    for _ in range(steps):
        act0 -= 1
        act1 += 1
        lo, hi = act0, act1 + 1
        # numpy buffers overlapping basic-slice assignments, so these shifts
        # are safe in place
        even[lo:hi] = even[lo + 1:hi + 1]
        odd[lo:hi] = odd[lo - 1:hi - 1]
        e = even[lo:hi]
        o = odd[lo:hi]
        ph = phases[lo:hi]
        new_e = ph * (a * e + b * o)
        odd[lo:hi] = ph * (c * e + d * o)
        even[lo:hi] = new_e
    return act0, act1
