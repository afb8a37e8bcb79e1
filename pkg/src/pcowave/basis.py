"""Compactly supported orthonormal wavelet bases on a dyadic grid.

``build_basis`` runs the cascade algorithm: scaling-function values at the
integers come from the unit eigenvector of the refinement matrix, finer
dyadic values from the two-scale relation, and the mother wavelet from the
high-pass filter.  The tables are recentred so both functions vanish
outside ``[-A, A]`` with ``A = ceil((2V-1)/2) = V``.

Pointwise evaluation interpolates linearly on the table; the Haar member
(``V = 1``) is evaluated exactly as a right-continuous step function so
that its dyadic structure is preserved to machine precision.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CascadeDepthError, CascadeError
from .filters import daubechies_filter, qmf

MIN_CASCADE_DEPTH = 4
MAX_CASCADE_DEPTH = 20

DEFAULT_CASCADE_DEPTH = 12

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class WaveletBasis:
    """Immutable container for one Daubechies basis.

    ``phi_table`` and ``psi_table`` hold the scaling function and mother
    wavelet on the uniform grid ``x = -A + i * 2**-cascade_depth`` over
    ``[-A, A]``.  ``phi0`` is ``max(phi_sup, psi_sup)`` and enters the
    selection penalty.
    """

    vanishing_moments: int
    lowpass: np.ndarray
    highpass: np.ndarray
    support_radius: int
    cascade_depth: int
    phi_table: np.ndarray
    psi_table: np.ndarray
    phi_sup: float
    psi_sup: float
    phi0: float
    # index shift applied when recentring the natively [0, 2V-1] supported
    # functions; filter tap j acts at offset j - shift in the centred frame
    shift: int = field(repr=False, default=0)

    @property
    def step(self) -> float:
        return 2.0 ** (-self.cascade_depth)

    @property
    def grid_origin(self) -> float:
        return -float(self.support_radius)

    @property
    def is_step_function(self) -> bool:
        return self.vanishing_moments == 1

    @property
    def support_lo(self) -> int:
        """Exact left end of supp(phi) = supp(psi) in the centred frame."""
        return -self.shift

    @property
    def support_hi(self) -> int:
        """Exact right end of supp(phi) = supp(psi) in the centred frame."""
        return 2 * self.vanishing_moments - 1 - self.shift

    def grid(self) -> np.ndarray:
        """Dyadic grid the tables are sampled on."""
        return self.grid_origin + self.step * np.arange(len(self.phi_table))


def build_basis(vanishing_moments: int,
                cascade_depth: int = DEFAULT_CASCADE_DEPTH) -> WaveletBasis:
    """Construct a Daubechies basis with tabulated scaling/wavelet functions.

    Parameters
    ----------
    vanishing_moments : int
        Order ``V`` in ``1..10`` (filter length ``2V``).
    cascade_depth : int
        Dyadic refinement depth ``J`` in ``4..20``; tables are sampled at
        step ``2**-J``.
    """
    if not MIN_CASCADE_DEPTH <= int(cascade_depth) <= MAX_CASCADE_DEPTH:
        raise CascadeDepthError(
            f"cascade depth must be in [{MIN_CASCADE_DEPTH}, {MAX_CASCADE_DEPTH}],"
            f" got {cascade_depth}"
        )
    V = int(vanishing_moments)
    J = int(cascade_depth)
    h = daubechies_filter(V)
    g = qmf(h)

    phi_native = _cascade_native(h, J)
    psi_native = _wavelet_from_scaling(phi_native, g, J)

    # Recentre: native support [0, 2V-1], shift by floor((2V-1)/2) = V-1 so
    # that support lies in [-A, A] with A = V.
    A = V
    shift = (2 * V - 1) // 2
    phi_table = _recentre(phi_native, A, shift, J)
    psi_table = _recentre(psi_native, A, shift, J)

    phi_sup = float(np.max(np.abs(phi_table)))
    psi_sup = float(np.max(np.abs(psi_table)))

    return WaveletBasis(
        vanishing_moments=V,
        lowpass=h,
        highpass=g,
        support_radius=A,
        cascade_depth=J,
        phi_table=phi_table,
        psi_table=psi_table,
        phi_sup=phi_sup,
        psi_sup=psi_sup,
        phi0=max(phi_sup, psi_sup),
        shift=shift,
    )


def _cascade_native(h: np.ndarray, depth: int) -> np.ndarray:
    """Scaling-function values on ``[0, 2V-1]`` at step ``2**-depth``."""
    L = len(h)  # 2V
    n_int = L - 1  # support length
    if L == 2:  # Haar: phi = 1 on [0, 1)
        values = np.array([1.0, 0.0])
    else:
        # Interior refinement matrix M[i, j] = sqrt(2) h_{2i - j}, i,j = 1..L-2.
        idx = 2 * np.arange(1, n_int)[:, None] - np.arange(1, n_int)[None, :]
        valid = (idx >= 0) & (idx < L)
        M = np.where(valid, SQRT2 * np.take(h, np.clip(idx, 0, L - 1)), 0.0)
        eigvals, eigvecs = np.linalg.eig(M)
        near_one = np.abs(eigvals - 1.0) < 1e-8
        if np.count_nonzero(near_one) != 1:
            raise CascadeError(
                "refinement matrix does not have a simple unit eigenvalue"
            )
        v = np.real(eigvecs[:, int(np.argmax(near_one))])
        v = v / v.sum()  # integer values of phi sum to 1
        values = np.concatenate(([0.0], v, [0.0]))

    # Refine: at step j -> j+1, even grid points copy over and odd ones come
    # from phi(x) = sqrt(2) sum_k h_k phi(2x - k), where 2x lies on grid j.
    for j in range(depth):
        size = n_int * 2 ** (j + 1) + 1
        fine = np.zeros(size)
        fine[::2] = values
        odd = np.arange(1, size, 2)
        acc = np.zeros(len(odd))
        for k in range(L):
            src = odd - k * 2 ** j  # index of 2x - k on grid j
            ok = (src >= 0) & (src < len(values))
            acc[ok] += h[k] * values[src[ok]]
        fine[1::2] = SQRT2 * acc
        values = fine
    return values


def _wavelet_from_scaling(phi_native: np.ndarray, g: np.ndarray,
                          depth: int) -> np.ndarray:
    """psi(x) = sqrt(2) sum_k g_k phi(2x - k) on the same native grid."""
    L = len(g)
    size = len(phi_native)
    idx = np.arange(size)
    psi = np.zeros(size)
    for k in range(L):
        src = 2 * idx - k * 2 ** depth  # position of 2x - k at step 2**-depth
        ok = (src >= 0) & (src < size)
        psi[ok] += g[k] * phi_native[src[ok]]
    return SQRT2 * psi


def _recentre(native: np.ndarray, A: int, shift: int, depth: int) -> np.ndarray:
    """Embed a natively [0, 2V-1] table into the centred grid over [-A, A]."""
    size = 2 * A * 2 ** depth + 1
    table = np.zeros(size)
    offset = (shift - A) * 2 ** depth  # native index of centred grid origin
    lo = -offset  # centred index of native x = 0
    table[lo:lo + len(native)] = native
    return table


def eval_phi(basis: WaveletBasis, x) -> np.ndarray | float:
    """Scaling function at ``x`` (scalar or array); exactly 0 outside [-A, A]."""
    return _eval_table(basis, basis.phi_table, x)


def eval_psi(basis: WaveletBasis, x) -> np.ndarray | float:
    """Mother wavelet at ``x``; exactly 0 outside [-A, A]."""
    return _eval_table(basis, basis.psi_table, x)


def _eval_table(basis: WaveletBasis, table: np.ndarray, x):
    arr = np.asarray(x, dtype=float)
    out = _kernels.interp_table(
        table, basis.grid_origin, 1.0 / basis.step,
        basis.is_step_function, np.atleast_1d(arr),
    )
    if arr.ndim == 0:
        return float(out[0])
    return out


def scaled_phi(basis: WaveletBasis, level: int, translate: int, x):
    """Dilated/translated scaling function ``2**(N/2) phi(2**N x - k)``."""
    return 2.0 ** (level / 2.0) * eval_phi(
        basis, np.ldexp(np.asarray(x, dtype=float), level) - translate
    )


def scaled_psi(basis: WaveletBasis, level: int, translate: int, x):
    """Dilated/translated mother wavelet ``2**(N/2) psi(2**N x - k)``."""
    return 2.0 ** (level / 2.0) * eval_psi(
        basis, np.ldexp(np.asarray(x, dtype=float), level) - translate
    )


def overlap_sum(basis: WaveletBasis, x: float) -> float:
    """``sum_k |phi(x - k)|`` — finite by compact support."""
    A = basis.support_radius
    k_first = int(np.floor(x - A)) + 1
    ks = np.arange(k_first, k_first + 2 * A + 1)
    return float(np.sum(np.abs(eval_phi(basis, x - ks))))


def vanishing_moments_check(basis: WaveletBasis, max_order: int) -> np.ndarray:
    """Trapezoid quadrature of ``int psi(u) u**l du`` for ``l < max_order``.

    All values should be below 1e-6 in absolute value when ``max_order``
    does not exceed the number of vanishing moments.
    """
    u = basis.grid()
    psi = basis.psi_table
    orders = np.arange(int(max_order))
    return np.array([np.trapezoid(psi * u ** o, dx=basis.step) for o in orders])


def phi_mass(basis: WaveletBasis) -> float:
    """Riemann (trapezoid) sum of the scaling function over its table."""
    return float(np.trapezoid(basis.phi_table, dx=basis.step))
