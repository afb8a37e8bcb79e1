"""Pure-numpy reference implementations of the hot kernels.

Every function here has a signature-compatible twin in the compiled
``_fast`` extension; the package works identically (just slower) when the
extension is unavailable.
"""

import numpy as np

BACKEND_NAME = "python"


def interp_table(table, origin, inv_step, step_mode, xs):
    """Evaluate a tabulated compactly supported function at ``xs``.

    Linear interpolation on the uniform grid ``origin + i / inv_step``;
    exactly zero outside the table.  With ``step_mode`` the table is read as
    a right-continuous step function (exact for Haar).
    """
    xs = np.asarray(xs, dtype=float)
    u = (xs - origin) * inv_step
    i = np.floor(u).astype(np.int64)
    n = len(table)
    out = np.zeros(xs.shape)
    if step_mode:
        ok = (i >= 0) & (i < n)
        out[ok] = table[i[ok]]
    else:
        ok = (i >= 0) & (i < n - 1)
        iok = i[ok]
        frac = u[ok] - iok
        out[ok] = table[iok] * (1.0 - frac) + table[iok + 1] * frac
    return out


def fit_coeffs(table, origin, inv_step, step_mode, support_radius,
               samples, level, k_lo, k_hi):
    """Empirical scaling coefficients at one resolution level.

    Returns ``c[k - k_lo] = 2**(level/2) / n * sum_u T(2**level x_u - k)``
    for ``k`` in ``[k_lo, k_hi]``, where ``T`` is the tabulated function.
    """
    samples = np.asarray(samples, dtype=float)
    n = len(samples)
    width = k_hi - k_lo + 1
    y = np.ldexp(samples, level)
    k_first = np.ceil(y - support_radius).astype(np.int64)
    offsets = np.arange(2 * support_radius + 1)
    ks = k_first[:, None] + offsets[None, :]
    vals = interp_table(table, origin, inv_step, step_mode,
                        (y[:, None] - ks).ravel())
    idx = (ks.ravel() - k_lo)
    good = (idx >= 0) & (idx < width)
    acc = np.bincount(idx[good], weights=vals[good], minlength=width)
    return acc * (2.0 ** (level / 2.0) / n)


def eval_expansion(coeffs, k_lo, level, table, origin, inv_step, step_mode,
                   support_radius, xs):
    """Evaluate ``sum_k c_k 2**(level/2) T(2**level x - k)`` on ``xs``."""
    coeffs = np.asarray(coeffs, dtype=float)
    xs = np.asarray(xs, dtype=float)
    y = np.ldexp(xs, level)
    k_first = np.ceil(y - support_radius).astype(np.int64)
    out = np.zeros(len(xs))
    width = len(coeffs)
    for m in range(2 * support_radius + 1):
        ks = k_first + m
        vals = interp_table(table, origin, inv_step, step_mode, y - ks)
        idx = ks - k_lo
        ok = (idx >= 0) & (idx < width)
        out[ok] += coeffs[idx[ok]] * vals[ok]
    return out * 2.0 ** (level / 2.0)


def analysis_step(values, start, taps, tap_origin, out_lo, out_hi):
    """One filter-bank analysis step ``out[k] = sum_t taps[t] a[2k + tap_origin + t]``.

    ``values`` holds coefficients for indices ``start..start+len-1``; the
    output covers ``out_lo..out_hi`` inclusive.
    """
    values = np.asarray(values, dtype=float)
    taps = np.asarray(taps, dtype=float)
    nk = out_hi - out_lo + 1
    # pad so that every access 2k + tap_origin + t lands inside the buffer
    pad_lo = 2 * out_lo + tap_origin
    pad_hi = 2 * out_hi + tap_origin + len(taps) - 1
    buf = np.zeros(pad_hi - pad_lo + 1)
    src_lo = max(start, pad_lo)
    src_hi = min(start + len(values) - 1, pad_hi)
    if src_lo <= src_hi:
        buf[src_lo - pad_lo:src_hi - pad_lo + 1] = \
            values[src_lo - start:src_hi - start + 1]
    out = np.zeros(nk)
    for t in range(len(taps)):
        out += taps[t] * buf[t:t + 2 * nk:2]
    return out


def synthesis_step(alpha, a_lo, beta, b_lo, h_taps, g_taps, tap_origin,
                   out_lo, out_hi):
    """Inverse filter-bank step
    ``out[m] = sum_k h[m - 2k - tap_origin] alpha[k] + sum_k g[...] beta[k]``."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    nm = out_hi - out_lo + 1
    out = np.zeros(nm)
    _scatter(out, out_lo, alpha, a_lo, np.asarray(h_taps, dtype=float), tap_origin)
    _scatter(out, out_lo, beta, b_lo, np.asarray(g_taps, dtype=float), tap_origin)
    return out


def _scatter(out, out_lo, coeffs, c_lo, taps, tap_origin):
    nm = len(out)
    nk = len(coeffs)
    for t in range(len(taps)):
        # target indices m = 2k + tap_origin + t for k = c_lo..c_lo+nk-1,
        # with k clipped so that 0 <= m0 + 2k < nm
        m0 = 2 * c_lo + tap_origin + t - out_lo
        k_from = max(0, int(np.ceil(-m0 / 2)))
        k_to = min(nk, int(np.floor((nm - 1 - m0) / 2)) + 1)
        if k_from >= k_to:
            continue
        sl = slice(m0 + 2 * k_from, m0 + 2 * k_to, 2)
        out[sl] += taps[t] * coeffs[k_from:k_to]
