"""Unit-disk coefficient sequences, five-diagonal unitaries, and the walk
correspondences: diagonal gauge, sieving of the square, and the square as a
pair of unitary band matrices.

Block layout.  A coefficient alpha_k at position k contributes the symmetric
unitary block [[conj(alpha), rho], [rho, -alpha]] acting on the coordinate
pair (k, k+1); the full operator is the product of the even-aligned layer and
the odd-aligned layer.  Walk-derived sequences have alpha vanishing at odd k.

Phase accuracy.  The gauge and coefficient phases are quadratic in the cell
label (x^2 field + ...).  Evaluating them as written loses ~|arg| * eps
absolute accuracy, which already exceeds 1e-12 on 100-cell windows, so all
quadratic phases are accumulated incrementally with wrapping mod 2 pi; the
error then stays ~1e-14 across windows of hundreds of cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .walk import SIGMA1, WalkSpec

TWO_PI = 2.0 * math.pi


def _wrap(x: float) -> float:
    return x - TWO_PI * math.floor(x / TWO_PI)


def quadratic_phases(a2: float, b1: float, c0: float, xlo: int, xhi: int) -> np.ndarray:
    """e^{i (a2 x^2 + b1 x + c0)} for x in [xlo, xhi], accumulated with
    per-step wrapping so the absolute phase error stays O(|x| eps)."""
    n = xhi - xlo + 1
    out = np.empty(n, dtype=np.complex128)
    a2 = _wrap(a2)
    b1 = _wrap(b1)
    val = _wrap(c0)
    # walk from 0 upward and downward; first difference at x is a2*(2x+1)+b1
    vals = {0: val}
    v, d = val, _wrap(a2 + b1)          # d = p(1) - p(0)
    for x in range(0, max(xhi, 0)):
        v = _wrap(v + d)
        d = _wrap(d + 2.0 * a2)
        vals[x + 1] = v
    v, d = val, _wrap(a2 - b1)          # d = p(-1) - p(0)
    for x in range(0, -min(xlo, 0)):
        v = _wrap(v + d)
        d = _wrap(d + 2.0 * a2)
        vals[-x - 1] = v
    for k, x in enumerate(range(xlo, xhi + 1)):
        out[k] = complex(math.cos(vals[x]), math.sin(vals[x]))
    return out


def theta_block(alpha: complex) -> np.ndarray:
    """The symmetric unitary building block [[conj(a), rho], [rho, -a]],
    rho = sqrt(1 - |a|^2)."""
    alpha = complex(alpha)
    if abs(alpha) >= 1.0:
        raise ValueError("coefficient must lie strictly inside the unit disk")
    rho = math.sqrt(1.0 - abs(alpha) ** 2)
    return np.array([[np.conj(alpha), rho], [rho, -alpha]], dtype=np.complex128)


def electric_verblunsky(spec: WalkSpec, k: int) -> complex:
    """Unit-disk coefficient of the gauged electric walk at position k.

    Odd k give 0; at k = 2x the value is
    -c e^{-i(x^2 field + x(arg a + arg d) + 2 x offset + arg a)} with a, c, d
    the su2-reduced cell operator entries.
    """
    cn = spec.coin
    if not cn.is_su2:
        raise ValueError("cell operator must be su2-reduced (determinant phase "
                         "folded into the offset)")
    if k % 2 != 0:
        return 0.0
    x = k // 2
    arga = math.atan2(cn.a.imag, cn.a.real)
    argd = math.atan2(cn.d.imag, cn.d.real)
    ph = quadratic_phases(-spec.field, -(arga + argd + 2.0 * spec.offset), -arga, x, x)[0]
    return complex(-cn.c * ph)


def gauge_lambda(spec: WalkSpec, k: int) -> complex:
    """Diagonal phase at interleaved index k of the gauge that turns the
    electric walk into its five-diagonal canonical form.

    Even k = 2x:  e^{-i( x(x-1)/2 field + x(arg a + offset) )}
    Odd  k = 2x+1: e^{+i( x(x+1)/2 field + x(arg d + offset) )}

    The odd phases carry arg d (not arg a); for su2-reduced operators
    arg d = -arg a and the two agree exactly when a is real.
    """
    cn = spec.coin
    if not cn.is_su2:
        raise ValueError("cell operator must be su2-reduced")
    arga = math.atan2(cn.a.imag, cn.a.real)
    argd = math.atan2(cn.d.imag, cn.d.real)
    if k % 2 == 0:
        x = k // 2
        return complex(quadratic_phases(-spec.field / 2.0,
                                        -(arga + spec.offset) + spec.field / 2.0,
                                        0.0, x, x)[0])
    x = (k - 1) // 2
    return complex(quadratic_phases(spec.field / 2.0,
                                    (argd + spec.offset) + spec.field / 2.0,
                                    0.0, x, x)[0])


def gauge_diagonal(spec: WalkSpec, lo: int, hi: int) -> np.ndarray:
    """gauge_lambda evaluated on the index window [lo, hi] in one pass."""
    cn = spec.coin
    if not cn.is_su2:
        raise ValueError("cell operator must be su2-reduced")
    arga = math.atan2(cn.a.imag, cn.a.real)
    argd = math.atan2(cn.d.imag, cn.d.real)
    xlo, xhi = lo // 2, hi // 2
    even = quadratic_phases(-spec.field / 2.0, -(arga + spec.offset) + spec.field / 2.0,
                            0.0, xlo, xhi)
    odd = quadratic_phases(spec.field / 2.0, (argd + spec.offset) + spec.field / 2.0,
                           0.0, xlo, xhi)
    out = np.empty(hi - lo + 1, dtype=np.complex128)
    for k in range(lo, hi + 1):
        x = k // 2 if k % 2 == 0 else (k - 1) // 2
        out[k - lo] = even[x - xlo] if k % 2 == 0 else odd[x - xlo]
    return out


@dataclass(frozen=True)
class VerblunskySeq:
    """A source of unit-disk coefficients alpha_k over a window of positions.

    kind is one of 'constant', 'skew-shift', 'electric-walk', 'explicit'.
    Walk-derived sequences vanish at odd k; the skew-shift family
    lam e^{-i(x^2 field + x(offset + xi) + zeta)} fills every position.
    """

    kind: str
    lam: float = 0.0
    field: float = 0.0
    offset: float = 0.0
    xi: float = 0.0
    zeta: float = 0.0
    spec: WalkSpec | None = None
    values: tuple = ()
    lo: int = 0

    @classmethod
    def constant(cls, lam: float) -> "VerblunskySeq":
        if not 0 <= lam < 1:
            raise ValueError("need 0 <= lam < 1")
        return cls("constant", lam=lam)

    @classmethod
    def skew_shift(cls, lam: float, field: float, offset: float = 0.0,
                   xi: float = 0.0, zeta: float = 0.0) -> "VerblunskySeq":
        if not 0 <= lam < 1:
            raise ValueError("need 0 <= lam < 1")
        return cls("skew-shift", lam=lam, field=field, offset=offset, xi=xi, zeta=zeta)

    @classmethod
    def electric_walk(cls, spec: WalkSpec) -> "VerblunskySeq":
        if abs(abs(spec.coin.a)) >= 1.0 - 1e-15:
            # alpha = -c vanishes; the sparse operator degenerates to a shift
            pass
        return cls("electric-walk", spec=spec)

    @classmethod
    def from_values(cls, values, lo: int = 0) -> "VerblunskySeq":
        vals = tuple(complex(v) for v in values)
        if any(abs(v) >= 1.0 for v in vals):
            raise ValueError("coefficients must lie inside the unit disk")
        return cls("explicit", values=vals, lo=lo)

    def alphas(self, lo: int, hi: int) -> np.ndarray:
        """alpha_k for k in [lo, hi] as a dense array."""
        ks = np.arange(lo, hi + 1)
        if self.kind == "constant":
            return np.full(ks.shape, self.lam, dtype=np.complex128)
        if self.kind == "skew-shift":
            return self.lam * quadratic_phases(-self.field, -(self.offset + self.xi),
                                               -self.zeta, lo, hi)
        if self.kind == "electric-walk":
            spec = self.spec
            cn = spec.coin
            if not cn.is_su2:
                raise ValueError("cell operator must be su2-reduced")
            arga = math.atan2(cn.a.imag, cn.a.real)
            argd = math.atan2(cn.d.imag, cn.d.real)
            xlo = -(-lo // 2) if lo % 2 else lo // 2
            xlo, xhi = math.floor(lo / 2), math.floor(hi / 2)
            ph = quadratic_phases(-spec.field, -(arga + argd + 2.0 * spec.offset),
                                  -arga, xlo, xhi)
            out = np.zeros(ks.shape, dtype=np.complex128)
            for i, k in enumerate(ks):
                if k % 2 == 0:
                    out[i] = -cn.c * ph[k // 2 - xlo]
            return out
        if self.kind == "explicit":
            out = np.zeros(ks.shape, dtype=np.complex128)
            for i, k in enumerate(ks):
                j = k - self.lo
                if 0 <= j < len(self.values):
                    out[i] = self.values[j]
            return out
        raise ValueError(f"unknown kind {self.kind!r}")


@dataclass
class BandedUnitary:
    """A five-diagonal unitary on the index window [lo, hi), stored by
    diagonals (band solver layout: data[2 + i - j, j - lo] = A[i, j]).

    parity 0 means the even-aligned block layer is applied second (standard
    layering); parity 1 the odd-aligned layer.  Operators built on a window
    omit the blocks straddling the edges, so unitarity holds away from the
    two outermost index pairs only.
    """

    lo: int
    data: np.ndarray
    parity: int = 0
    alphas: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def hi(self) -> int:
        return self.lo + self.n

    def toarray(self) -> np.ndarray:
        n = self.n
        out = np.zeros((n, n), dtype=np.complex128)
        for off in range(-2, 3):
            d = np.diagonal(self.data, offset=0)  # placeholder, replaced below
        for i in range(n):
            for j in range(max(0, i - 2), min(n, i + 3)):
                out[i, j] = self.data[2 + i - j, j]
        return out

    @classmethod
    def from_dense(cls, mat: np.ndarray, lo: int, parity: int = 0,
                   alphas: np.ndarray | None = None) -> "BandedUnitary":
        mat = np.asarray(mat, dtype=np.complex128)
        n = mat.shape[0]
        banddefect = 0.0
        for i in range(n):
            for j in range(n):
                if abs(i - j) > 2:
                    banddefect = max(banddefect, abs(mat[i, j]))
        if banddefect > 1e-12:
            raise ValueError(f"matrix is not five-diagonal (defect {banddefect:.2e})")
        data = np.zeros((5, n), dtype=np.complex128)
        for i in range(n):
            for j in range(max(0, i - 2), min(n, i + 3)):
                data[2 + i - j, j] = mat[i, j]
        return cls(lo, data, parity, alphas)

    def interior_unitarity_defect(self, margin: int = 2) -> float:
        m = self.toarray()
        gram = m.conj().T @ m - np.eye(self.n)
        s = slice(2 * margin, self.n - 2 * margin)
        return float(np.abs(gram[s, s]).max())


def _layered_product(blocks: dict[int, np.ndarray], lo: int, hi: int,
                     second_parity: int = 0) -> np.ndarray:
    """Dense product (sum_{k % 2 == second_parity} B_k)(sum_{other k} B_k) on
    [lo, hi); B_k acts on (k, k+1); positions without a block act as identity."""
    n = hi - lo
    first = np.eye(n, dtype=np.complex128)
    second = np.eye(n, dtype=np.complex128)
    for k in range(lo, hi - 1):
        blk = blocks.get(k)
        if blk is None:
            continue
        i = k - lo
        if k % 2 == second_parity:
            second[i:i + 2, i:i + 2] = blk
        else:
            first[i:i + 2, i:i + 2] = blk
    return second @ first


def build_cmv(seq: VerblunskySeq, lo: int, hi: int) -> BandedUnitary:
    """Five-diagonal unitary (even layer) x (odd layer) on [lo, hi).

    The window must be even-aligned (lo, hi even) so both layers tile it;
    blocks straddling the edges are omitted, so unitarity is interior-only.
    """
    if lo % 2 != 0 or hi % 2 != 0 or hi - lo < 4:
        raise ValueError("window must be even-aligned with at least 4 indices")
    al = seq.alphas(lo, hi - 2)
    blocks = {k: theta_block(al[k - lo]) for k in range(lo, hi - 1)}
    dense = _layered_product(blocks, lo, hi, second_parity=0)
    return BandedUnitary.from_dense(dense, lo, parity=0, alphas=al)
