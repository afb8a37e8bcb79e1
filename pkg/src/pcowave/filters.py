"""Orthonormal Daubechies filter construction.

The two-scale (low-pass) filter of length ``2V`` is obtained by spectral
factorization of the halfband polynomial, carried out in extended precision
so that the filter identities

    sum_k h_k = sqrt(2)        and        sum_k h_k h_{k+2m} = delta_{m,0}

hold to within a few ulps in double precision.
"""

import mpmath as mp
import numpy as np

from .errors import UnsupportedOrderError

MAX_VANISHING_MOMENTS = 10

SQRT2 = np.sqrt(2.0)


def daubechies_filter(vanishing_moments: int) -> np.ndarray:
    """Low-pass filter of the Daubechies wavelet with ``V`` vanishing moments.

    Parameters
    ----------
    vanishing_moments : int
        Number of vanishing moments ``V`` in ``1..10``; the filter has
        length ``2V``.

    Returns
    -------
    ndarray
        The ``2V`` filter taps, extremal-phase ordering (the ``V=2`` filter
        starts with ``(1+sqrt(3))/(4 sqrt(2))``), normalized so the taps sum
        to ``sqrt(2)``.
    """
    V = int(vanishing_moments)
    if not 1 <= V <= MAX_VANISHING_MOMENTS:
        raise UnsupportedOrderError(
            f"vanishing moments must be in [1, {MAX_VANISHING_MOMENTS}], got {V}"
        )
    if V == 1:
        c = 1.0 / SQRT2
        return np.array([c, c])

    with mp.workdps(60):
        # Roots of P(y) = sum_{k<V} C(V-1+k, k) y^k, the residual factor of
        # the halfband polynomial.
        p_desc = [mp.binomial(V - 1 + k, k) for k in reversed(range(V))]
        y_roots = mp.polyroots(p_desc, maxsteps=200, extraprec=120)

        # Each y-root maps to a z-quadratic z^2 - (2 - 4y) z + 1; keep the
        # z-root inside the unit circle.  Assemble q(z) = (1+z)^V prod(z - z_j)
        # in descending powers.
        q = [mp.mpf(1)]
        for _ in range(V):  # (1+z)^V
            q = _poly_mul(q, [mp.mpf(1), mp.mpf(1)])
        for y in y_roots:
            const = 1 - 2 * y
            part = 2 * mp.sqrt(y * (y - 1))
            z = const + part
            if abs(z) > 1:
                z = const - part
            q = _poly_mul(q, [mp.mpf(1), -z])

        total = sum(q)
        h = [mp.re(c) * mp.sqrt(2) / mp.re(total) for c in q]
        return np.array([float(c) for c in h])


def _poly_mul(a, b):
    out = [mp.mpf(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def qmf(lowpass: np.ndarray) -> np.ndarray:
    """High-pass filter from the low-pass one via the alternating flip
    ``g_k = (-1)^k h_{L-1-k}``, supported on the same index range."""
    h = np.asarray(lowpass, dtype=float)
    signs = np.where(np.arange(len(h)) % 2 == 0, 1.0, -1.0)
    return signs * h[::-1]
