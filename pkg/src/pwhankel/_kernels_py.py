"""Pure numpy implementation of the hot kernels.

Mirrors the compiled extension ``pwhankel._fastcore`` function for
function; whichever is importable is selected by ``pwhankel._backend``.
Inputs are float64 arrays, outputs are freshly allocated float64 arrays.
"""

import numpy as np

BACKEND_NAME = "python"

# Row-chunk size for dense kernel assembly, sized so the per-chunk
# temporaries stay ~100 MB even for ~20k-column matrices.
_CHUNK_ENTRIES = 4_000_000


def psi_eval(t, lo, hi):
    """Smooth cutoff profile: 1 on [0, lo], 0 on [hi, inf), exp-type blend
    g(hi-t)/(g(hi-t)+g(t-lo)) with g(s)=exp(-1/s) in between."""
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros(t.shape, dtype=np.float64)
    out[t <= lo] = 1.0
    mid = (t > lo) & (t < hi)
    if np.any(mid):
        tm = t[mid]
        a = np.exp(-1.0 / (hi - tm))
        b = np.exp(-1.0 / (tm - lo))
        out[mid] = a / (a + b)
    return out


def phi_hat_sum(px, py, centers, r, lo, hi):
    """Sum of translated bump profiles at points (px, py).

    Returns sum_j psi(|p - c_j| / r); with disjoint supports at most one
    term contributes per point.
    """
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    out = np.zeros(px.shape, dtype=np.float64)
    sup = r * hi
    for cxj, cyj in centers:
        d2 = (px - cxj) ** 2 + (py - cyj) ** 2
        mask = d2 < sup * sup
        if np.any(mask):
            out[mask] += psi_eval(np.sqrt(d2[mask]) / r, lo, hi)
    return out


def hankel_matrix(row_x, row_y, row_sqw, col_x, col_y, col_sqw, centers, r, lo, hi):
    """Weight-symmetrized dense kernel matrix.

    M[i, k] = row_sqw[i] * sum_j psi(|(col_k + row_i) - c_j| / r) * col_sqw[k]
    """
    nr = row_x.shape[0]
    nc = col_x.shape[0]
    m = np.empty((nr, nc), dtype=np.float64)
    step = max(1, _CHUNK_ENTRIES // max(nc, 1))
    for i0 in range(0, nr, step):
        i1 = min(i0 + step, nr)
        sx = col_x[None, :] + row_x[i0:i1, None]
        sy = col_y[None, :] + row_y[i0:i1, None]
        acc = phi_hat_sum(sx.ravel(), sy.ravel(), centers, r, lo, hi)
        acc = acc.reshape(i1 - i0, nc)
        acc *= row_sqw[i0:i1, None]
        acc *= col_sqw[None, :]
        m[i0:i1] = acc
    return m


def _sector_node_count(s, rho, half, min_nodes, pts_per_osc):
    # fastest angular oscillation has period 1/(rho*s); resolve it with
    # pts_per_osc nodes across the sector of width `half`
    return max(int(min_nodes), int(np.ceil(pts_per_osc * rho * s * half)))


def phase_sector_lp(s, n, rho, power, min_nodes, pts_per_osc):
    """Angular integrals of the translated-bump phase sum.

    For each radius s[m] returns

        g[m] = integral over [0, 2*pi] of |S(s, alpha)|**power d(alpha),
        S(s, alpha) = sum_j exp(2*pi*i*rho*s*cos(alpha - theta_j)),

    with theta_j = 2*pi*j/n, evaluated by closed trapezoid on one mirror
    half-sector [0, pi/n] and unfolded by the 2n-fold symmetry.
    """
    s = np.asarray(s, dtype=np.float64)
    half = np.pi / n
    theta = 2.0 * np.pi * np.arange(n) / n
    ct = np.cos(theta)
    st = np.sin(theta)
    even = n % 2 == 0
    out = np.empty(s.shape[0], dtype=np.float64)
    for m_idx in range(s.shape[0]):
        sm = s[m_idx]
        m = _sector_node_count(sm, rho, half, min_nodes, pts_per_osc)
        alpha = np.linspace(0.0, half, m + 1)
        z = 2.0 * np.pi * rho * sm
        # cos(alpha - theta_j) via the addition formula, vectorized
        ca = np.cos(alpha)[:, None]
        sa = np.sin(alpha)[:, None]
        ph = z * (ca * ct[None, :] + sa * st[None, :])
        if even:
            # antipodal centers pair into 2*cos(...), the sum is real
            vals = 2.0 * np.sum(np.cos(ph[:, : n // 2]), axis=1)
            mag2 = vals * vals
        else:
            re = np.sum(np.cos(ph), axis=1)
            im = np.sum(np.sin(ph), axis=1)
            mag2 = re * re + im * im
        vals = mag2 if power == 2 else np.sqrt(mag2)
        acc = np.sum(vals) - 0.5 * (vals[0] + vals[-1])
        out[m_idx] = 2.0 * n * acc * (half / m)
    return out
