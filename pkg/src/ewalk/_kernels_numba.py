"""Numba-compiled twins of the kernels in :mod:`ewalk._kernels_numpy`.

Importing this module raises if numba is unavailable; the backend selector
catches that and falls back to the numpy implementations.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from numba import njit, prange

_RESCALE_LO = 0.5
_RESCALE_HI = 2.0


@njit(cache=True, parallel=True)
def cocycle_lognorms(a, b, z, phi, thetas, n):
    K = thetas.shape[0]
    out = np.empty(K, dtype=np.float64)
    t12 = -np.conj(b) / a
    t21 = -b / a
    az = a * z
    z_over_a = z / a
    for k in prange(K):
        theta = thetas[k]
        m11 = 1.0 + 0.0j
        m12 = 0.0 + 0.0j
        m21 = 0.0 + 0.0j
        m22 = 1.0 + 0.0j
        logs = 0.0
        for x in range(1, n + 1):
            ph = cmath.exp(1j * (x * phi + theta))
            t11 = ph / az
            t22 = z_over_a / ph
            n11 = t11 * m11 + t12 * m21
            n12 = t11 * m12 + t12 * m22
            n21 = t21 * m11 + t22 * m21
            n22 = t21 * m12 + t22 * m22
            fro2 = (n11.real**2 + n11.imag**2 + n12.real**2 + n12.imag**2
                    + n21.real**2 + n21.imag**2 + n22.real**2 + n22.imag**2)
            if fro2 > _RESCALE_HI**2 or fro2 < _RESCALE_LO**2:
                s = math.sqrt(fro2)
                logs += math.log(s)
                inv = 1.0 / s
                n11 *= inv
                n12 *= inv
                n21 *= inv
                n22 *= inv
            m11, m12, m21, m22 = n11, n12, n21, n22
        fro2 = (m11.real**2 + m11.imag**2 + m12.real**2 + m12.imag**2
                + m21.real**2 + m21.imag**2 + m22.real**2 + m22.imag**2)
        det = m11 * m22 - m12 * m21
        d2 = det.real**2 + det.imag**2
        disc2 = fro2 * fro2 - 4.0 * d2
        if disc2 < 0.0:
            disc2 = 0.0
        sig2 = 0.5 * (fro2 + math.sqrt(disc2))
        out[k] = logs + 0.5 * math.log(sig2)
    return out


@njit(cache=True)
def cocycle_matrix(a, b, z, phi, theta, n):
    m = np.eye(2, dtype=np.complex128)
    log_scale = 0.0
    t12 = -np.conj(b) / a
    t21 = -b / a
    for x in range(1, n + 1):
        ph = cmath.exp(1j * (x * phi + theta))
        t11 = ph / (a * z)
        t22 = z / (a * ph)
        n11 = t11 * m[0, 0] + t12 * m[1, 0]
        n12 = t11 * m[0, 1] + t12 * m[1, 1]
        n21 = t21 * m[0, 0] + t22 * m[1, 0]
        n22 = t21 * m[0, 1] + t22 * m[1, 1]
        fro2 = (n11.real**2 + n11.imag**2 + n12.real**2 + n12.imag**2
                + n21.real**2 + n21.imag**2 + n22.real**2 + n22.imag**2)
        if fro2 > _RESCALE_HI**2 or fro2 < _RESCALE_LO**2:
            s = math.sqrt(fro2)
            log_scale += math.log(s)
            inv = 1.0 / s
            n11 *= inv
            n12 *= inv
            n21 *= inv
            n22 *= inv
        m[0, 0], m[0, 1], m[1, 0], m[1, 1] = n11, n12, n21, n22
    return m, log_scale


@njit(cache=True)
def evolve_steps(even, odd, act0, act1, a, b, c, d, phases, steps):
    for _ in range(steps):
        act0 -= 1
        act1 += 1
        # shift even left (ascending sweep reads old neighbours), odd right
        # (descending sweep), then mix per cell
        for k in range(act0, act1 + 1):
            even[k] = even[k + 1]
        for k in range(act1, act0 - 1, -1):
            odd[k] = odd[k - 1]
        for k in range(act0, act1 + 1):
            ph = phases[k]
            e = even[k]
            o = odd[k]
            even[k] = ph * (a * e + b * o)
            odd[k] = ph * (c * e + d * o)
    return act0, act1
