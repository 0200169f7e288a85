"""Cell operators, walk specifications, states, and one-step evolution.

Index conventions used throughout the package
----------------------------------------------

The line of cells x in Z is stored interleaved: cell x owns the flat indices
(2x, 2x+1).  The bare shift S moves even indices one cell left and odd
indices one cell right,

    S: 2x -> 2x - 2,    2x + 1 -> 2x + 3,

i.e. the even component of a cell is the left mover and the odd component the
right mover.  One time step is W = C S with C acting blockwise per cell; the
field adds the phase e^{i(x phi + theta)} to the cell-x block.  With these
conventions consecutive solution pairs (psi_{2x-1}, psi_{2x}) of W psi = z psi
propagate under the standard 2x2 transfer matrices (see :mod:`ewalk.xfer`),
and finite restrictions live on index windows [2a+1, 2b] (see
:mod:`ewalk.restrict`).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

TWO_PI = 2.0 * np.pi

#: coin-block unitarity tolerance
UNITARITY_TOL = 1e-12

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)


@dataclass(frozen=True)
class Coin:
    """A 2x2 cell operator e^{i eta} [[a, b], [c, d]].

    The bare matrix [[a, b], [c, d]] times e^{i eta} must be unitary.  When
    built through :meth:`su2` the entries satisfy c = -conj(b), d = conj(a)
    and |a|^2 + |b|^2 = 1, and the determinant phase sits entirely in eta.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    eta: float = 0.0

    def __post_init__(self):
        u = self.matrix()
        defect = np.abs(u.conj().T @ u - np.eye(2)).max()
        if defect > UNITARITY_TOL:
            raise ValueError(f"coin is not unitary (defect {defect:.3e})")
        object.__setattr__(self, "eta", float(self.eta) % TWO_PI)

    @classmethod
    def su2(cls, a, b, eta: float = 0.0) -> "Coin":
        """Coin with the symmetric parametrization c = -conj(b), d = conj(a)."""
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > UNITARITY_TOL:
            raise ValueError("|a|^2 + |b|^2 must equal 1")
        return cls(complex(a), complex(b), -np.conj(b), np.conj(a), eta)

    @classmethod
    def from_angles(cls, a_mod: float, a_arg: float = 0.0, b_arg: float = 0.0,
                    eta: float = 0.0) -> "Coin":
        """su2 coin from |a| and the phases of a and b."""
        if not 0.0 <= a_mod <= 1.0:
            raise ValueError("|a| must lie in [0, 1]")
        b_mod = np.sqrt(max(1.0 - a_mod * a_mod, 0.0))
        return cls.su2(a_mod * np.exp(1j * a_arg), b_mod * np.exp(1j * b_arg), eta)

    @classmethod
    def hadamard(cls) -> "Coin":
        r = 1.0 / np.sqrt(2.0)
        return cls.su2(r, r)

    @classmethod
    def identity(cls) -> "Coin":
        return cls.su2(1.0, 0.0)

    def matrix(self) -> np.ndarray:
        """The full 2x2 matrix including the determinant phase."""
        return np.exp(1j * self.eta) * np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def is_su2(self) -> bool:
        return (abs(self.c + np.conj(self.b)) <= 1e-12
                and abs(self.d - np.conj(self.a)) <= 1e-12)


@dataclass(frozen=True)
class WalkSpec:
    """A translation invariant cell operator plus field and offset phases.

    The determinant phase eta of the coin is folded into the offset at
    construction (a global per-step phase and an offset shift are the same
    thing), so the stored coin always has eta = 0.  field and offset are
    reduced mod 2 pi.
    """

    coin: Coin
    field: float = 0.0
    offset: float = 0.0

    def __post_init__(self):
        coin = self.coin
        offset = float(self.offset)
        if coin.eta != 0.0:
            offset += coin.eta
            coin = replace(coin, eta=0.0)
            object.__setattr__(self, "coin", coin)
        object.__setattr__(self, "field", float(self.field) % TWO_PI)
        object.__setattr__(self, "offset", offset % TWO_PI)

    def cell_phase(self, x: int) -> complex:
        return np.exp(1j * (x * self.field + self.offset))

    def coin_at(self, x: int) -> np.ndarray:
        """The dressed 2x2 block acting on cell x."""
        return self.coin.matrix() * self.cell_phase(x)

    def with_offset(self, theta: float) -> "WalkSpec":
        return WalkSpec(self.coin, self.field, theta)


@dataclass
class StateVector:
    """Amplitudes on a finite window of interleaved indices.

    ``lo`` is the lowest interleaved index carried; ``amp[k]`` is the
    amplitude at index lo + k.  The window always starts and ends on cell
    boundaries (lo even, length even).
    """

    lo: int
    amp: np.ndarray

    def __post_init__(self):
        self.amp = np.asarray(self.amp, dtype=np.complex128)
        if self.lo % 2 != 0 or self.amp.shape[0] % 2 != 0:
            raise ValueError("state windows must be cell aligned")

    @classmethod
    def delta(cls, index: int) -> "StateVector":
        """Point mass at one interleaved index."""
        lo = 2 * (index // 2)
        amp = np.zeros(2, dtype=np.complex128)
        amp[index - lo] = 1.0
        return cls(lo, amp)

    @classmethod
    def basis(cls, cell: int = 0, component: str = "right") -> "StateVector":
        """Point mass at a cell: 'right' (odd index, moves right under S) or
        'left' (even index)."""
        if component in ("right", "up", "+"):
            return cls.delta(2 * cell + 1)
        if component in ("left", "down", "-"):
            return cls.delta(2 * cell)
        raise ValueError(f"unknown component {component!r}")

    @property
    def hi(self) -> int:
        return self.lo + self.amp.shape[0] - 1

    @property
    def cells(self) -> tuple[int, int]:
        return self.lo // 2, self.hi // 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def amplitude(self, index: int) -> complex:
        if self.lo <= index <= self.hi:
            return complex(self.amp[index - self.lo])
        return 0.0

    def overlap(self, other: "StateVector") -> complex:
        """<self | other> on the common window."""
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if hi < lo:
            return 0.0
        mine = self.amp[lo - self.lo:hi - self.lo + 1]
        theirs = other.amp[lo - other.lo:hi - other.lo + 1]
        return complex(np.vdot(mine, theirs))

    def padded(self, cells_each_side: int) -> "StateVector":
        pad = 2 * cells_each_side
        amp = np.zeros(self.amp.shape[0] + 2 * pad, dtype=np.complex128)
        amp[pad:pad + self.amp.shape[0]] = self.amp
        return StateVector(self.lo - pad, amp)


def apply_shift(state: StateVector) -> StateVector:
    """One application of the bare shift S (support grows one cell per side)."""
    out = state.padded(1)
    even = out.amp[0::2].copy()
    odd = out.amp[1::2].copy()
    n = out.amp.shape[0] // 2
    new_even = np.zeros(n, dtype=np.complex128)
    new_odd = np.zeros(n, dtype=np.complex128)
    new_even[:-1] = even[1:]
    new_odd[1:] = odd[:-1]
    out.amp[0::2] = new_even
    out.amp[1::2] = new_odd
    return out


def apply_electric_step(spec: WalkSpec, state: StateVector) -> StateVector:
    """One application of the phased walk C S."""
    out = state.padded(1)
    c0 = out.lo // 2
    n = out.amp.shape[0] // 2
    cells = np.arange(c0, c0 + n)
    phases = np.exp(1j * (cells * spec.field + spec.offset))
    even = out.amp[0::2]
    odd = out.amp[1::2]
    new_even = np.zeros(n, dtype=np.complex128)
    new_odd = np.zeros(n, dtype=np.complex128)
    new_even[:-1] = even[1:]
    new_odd[1:] = odd[:-1]
    cn = spec.coin
    mixed_even = phases * (cn.a * new_even + cn.b * new_odd)
    mixed_odd = phases * (cn.c * new_even + cn.d * new_odd)
    out.amp[0::2] = mixed_even
    out.amp[1::2] = mixed_odd
    return out


def walk_window_matrix(spec: WalkSpec, cells: tuple[int, int],
                       boundary: dict[int, np.ndarray] | None = None) -> np.ndarray:
    """Dense matrix of C S on the full cell window [a, b] (indices [2a, 2b+1]).

    Couplings that would leave the window are dropped.  ``boundary`` may map
    cell labels to replacement 2x2 blocks (the field phase still dresses
    them).
    """
    lmat, mmat = factor_matrices(spec, cells, boundary)
    return lmat @ mmat


def factor_matrices(spec: WalkSpec, cells: tuple[int, int],
                    boundary: dict[int, np.ndarray] | None = None
                    ) -> tuple[np.ndarray, np.ndarray]:
    """The two block-diagonal factors of the walk on a cell window.

    Returns (L, M) with W = L M: L carries the blocks (coin_x sigma1) on the
    cell-aligned pairs (2x, 2x+1) and M carries sigma1 blocks on the staggered
    pairs (2x+1, 2x+2).  Dangling M half-blocks at the window edge are
    dropped (those rows/columns of M are zero).
    """
    a_cell, b_cell = cells
    if b_cell <= a_cell:
        raise ValueError("cell window must contain at least two cells")
    boundary = boundary or {}
    ncell = b_cell - a_cell + 1
    n = 2 * ncell
    lmat = np.zeros((n, n), dtype=np.complex128)
    for x in range(a_cell, b_cell + 1):
        blk = boundary.get(x)
        blk = spec.coin.matrix() if blk is None else np.asarray(blk, dtype=np.complex128)
        blk = blk * spec.cell_phase(x)
        i = 2 * (x - a_cell)
        lmat[i:i + 2, i:i + 2] = blk @ SIGMA1
    mmat = np.zeros((n, n), dtype=np.complex128)
    for x in range(a_cell, b_cell):
        i = 2 * (x - a_cell) + 1
        mmat[i:i + 2, i:i + 2] = SIGMA1
    return lmat, mmat


def dense_window_matrix(spec: WalkSpec, cells: tuple[int, int]) -> np.ndarray:
    """Matrix of the walk cut to the interleaved window [2a+1, 2b].

    This is the plain truncation chi W chi (couplings leaving the window are
    cut), which is not unitary; it serves as an application oracle on interior
    indices.  For exactly unitary windows see :mod:`ewalk.restrict`.
    """
    a_cell, b_cell = cells
    full = walk_window_matrix(spec, (a_cell, b_cell))
    return full[1:-1, 1:-1]
