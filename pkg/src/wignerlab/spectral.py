"""Spectra, Stieltjes transforms, the semicircle law, and resolvent identities.

Conventions.  For a Wigner matrix X with sigma^2 = 1/4 the eigenvalues of
X/sqrt(n) fill the semicircle on [-1, 1] with density u(x) = (2/pi)
sqrt(1-x^2); the eigenvalues of sqrt(n) W for W = X + sqrt(kappa) V fill
[-n sqrt(1+4k), n sqrt(1+4k)] with density rho(x/n)/n,

    rho(x) = 2 sqrt((1+4k-x^2)_+) / (pi (1+4k)).

The Stieltjes transform is taken in the resolvent convention

    m_n(z) = (1/n) tr (X/sqrt(n) - z)^{-1} = (1/n) sum_j 1/(y_j - z),

whose n -> infinity limit is m(z) = 2(-z + sqrt(z^2-1)) with the branch
making m Herglotz (Im m > 0 on Im z > 0).

The module also provides exact finite-n resolvent/minor identities
(Schur-complement form of tr D, and the deterministic inequalities bounding
|tr D - tr D_k| by 1/Im z) used as correctness oracles for everything
downstream.
"""

from dataclasses import dataclass

import numpy as np

from .quad import semicircle_average

SCALE_X_OVER_SQRT_N = "X_over_sqrt_n"
SCALE_SQRT_N_X = "sqrt_n_X"
SCALE_SQRT_N_W = "sqrt_n_W"

_SCALES = (SCALE_X_OVER_SQRT_N, SCALE_SQRT_N_X, SCALE_SQRT_N_W)


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues together with the scaling that produced them."""

    values: np.ndarray
    scale: str

    def __post_init__(self):
        if self.scale not in _SCALES:
            raise ValueError(f"unknown scale {self.scale!r}")

    @property
    def n(self):
        return len(self.values)

    def to_csv(self, path):
        rows = np.column_stack([np.arange(self.n), self.values])
        np.savetxt(path, rows, fmt=["%d", "%.17g"], delimiter=",",
                   header="index,value", comments="")


def eigenvalues(h, scale, scale_factor=None):
    """Sorted eigenvalues of a scaled Hermitian matrix.

    `scale` records which matrix was diagonalized; `scale_factor` overrides
    the implied multiplier (e.g. 1/sqrt(n) for SCALE_X_OVER_SQRT_N).
    Backed by LAPACK's Hermitian eigensolver; the trace is validated to
    1e-9 relative as a cheap correctness guard.
    """
    a = h.entries
    n = a.shape[0]
    if scale_factor is None:
        scale_factor = {
            SCALE_X_OVER_SQRT_N: 1.0 / np.sqrt(n),
            SCALE_SQRT_N_X: np.sqrt(n),
            SCALE_SQRT_N_W: np.sqrt(n),
        }[scale]
    m = a * scale_factor
    vals = np.linalg.eigvalsh(m)
    tr = np.real(np.trace(m))
    err = abs(vals.sum() - tr)
    if err > 1e-9 * max(1.0, abs(tr), np.abs(vals).max() * n):
        raise ArithmeticError(f"eigenvalue sum deviates from trace by {err:g}")
    return Spectrum(values=np.sort(vals), scale=scale)


def stieltjes_mn(spectrum_values, z):
    """(1/n) sum 1/(y_j - z) over the eigenvalues y_j of X/sqrt(n)."""
    if np.imag(z) == 0:
        raise ValueError("Im z != 0 required")
    y = np.asarray(spectrum_values)
    return complex(np.mean(1.0 / (y - z)))


def semicircle_density(x, kappa):
    """Limiting density of eigenvalues of sqrt(n) W at scale n."""
    x = np.asarray(x, dtype=float)
    s = 1.0 + 4.0 * kappa
    return 2.0 * np.sqrt(np.maximum(s - x * x, 0.0)) / (np.pi * s)


def wigner_u(x):
    """Semicircle density u(x) = (2/pi) sqrt(1-x^2) on [-1, 1]."""
    x = np.asarray(x, dtype=float)
    return (2.0 / np.pi) * np.sqrt(np.maximum(1.0 - x * x, 0.0))


def semicircle_transform(z):
    """Stieltjes transform m(z) = 2(-z + sqrt(z^2-1)) of u, for Im z > 0.

    The square root is realized as sqrt(z-1)*sqrt(z+1) with principal
    branches, which keeps Im m > 0 on the upper half plane without crossing
    the cut [-1, 1].
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("Im z > 0 required")
    root = np.sqrt(z - 1.0) * np.sqrt(z + 1.0)
    return 2.0 * (-z + root)


def linear_statistic(spectrum_values, phi, order=800):
    """Centered linear eigenvalue statistic of the eigenvalues of sqrt(n) X.

    Returns sum_j phi(nu_j / n) - n * integral of phi against u, the
    centering integral computed by quadrature.
    """
    nu = np.asarray(spectrum_values, dtype=float)
    n = len(nu)
    center = semicircle_average(phi, order=order)
    return float(np.sum(phi(nu / n)) - n * center)


def _minor_data(a, k):
    idx = np.delete(np.arange(a.shape[0]), k)
    return a[np.ix_(idx, idx)], a[idx, k]


def resolvent_identities_check(h, z):
    """Residuals of the exact resolvent/minor identities and inequalities.

    With D = (X/sqrt(n) - z)^{-1} and D_k the resolvent of the k-th minor,
    checks (writing q_k = (1/n) alpha_k^* D_k alpha_k):

      identity_1 : tr D = sum_k 1/(x_kk/sqrt(n) - z - q_k)
      identity_2 : tr D - tr D_k = (1 + (1/n) a*D_k^2 a)/(x_kk/sqrt(n) - z - q_k)
      ineq_3     : Im(-x_kk/sqrt(n) + z + q_k) >= Im z
      ineq_4     : Im(z + (sigma^2/n) tr D_k) >= Im z
      ineq_5     : |1 + (1/n) a*D_k^2 a| <= 1 + (1/n) a*D_k D_k^* a
      ineq_6     : |tr D - tr D_k| <= 1/Im z

    Returns a dict of residuals; inequality residuals are the (positive)
    violations, 0 when satisfied.
    """
    v = np.imag(z)
    if v == 0:
        raise ValueError("Im z != 0 required")
    if v < 0:
        out = resolvent_identities_check(h, np.conj(z))
        return out
    a = h.entries
    n = a.shape[0]
    x = a / np.sqrt(n)
    d = np.linalg.inv(x - z * np.eye(n))
    tr_d = np.trace(d)

    sigma2 = 0.25
    sum_1 = 0.0 + 0.0j
    res_2 = 0.0
    res_3 = 0.0
    res_4 = 0.0
    res_5 = 0.0
    res_6 = 0.0
    for k in range(n):
        a_min, alpha = _minor_data(a, k)
        dk = np.linalg.inv(a_min / np.sqrt(n) - z * np.eye(n - 1))
        q = (alpha.conj() @ dk @ alpha) / n
        beta_k = -a[k, k].real / np.sqrt(n) + z + q
        denom = a[k, k].real / np.sqrt(n) - z - q
        sum_1 += 1.0 / denom
        num2 = 1.0 + (alpha.conj() @ (dk @ dk) @ alpha) / n
        lhs2 = tr_d - np.trace(dk)
        res_2 = max(res_2, abs(lhs2 - num2 / denom))
        res_3 = max(res_3, v - np.imag(beta_k))
        beta_star = z + sigma2 * np.trace(dk) / n
        res_4 = max(res_4, v - np.imag(beta_star))
        rhs5 = 1.0 + np.real(alpha.conj() @ (dk @ dk.conj().T) @ alpha) / n
        res_5 = max(res_5, abs(num2) - rhs5)
        res_6 = max(res_6, abs(lhs2) - 1.0 / v)
    return {
        "identity_1": abs(tr_d - sum_1),
        "identity_2": res_2,
        "ineq_3": max(res_3, 0.0),
        "ineq_4": max(res_4, 0.0),
        "ineq_5": max(res_5, 0.0),
        "ineq_6": max(res_6, 0.0),
    }


def minor_spectrum(h, k):
    """Eigenvalues of the matrix with row/column k removed (for interlacing checks)."""
    a_min, _ = _minor_data(h.entries, k)
    return np.sort(np.linalg.eigvalsh(a_min))
