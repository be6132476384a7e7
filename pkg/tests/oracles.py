"""Independent oracles used to freeze or cross-check expected values.

Everything here is deliberately dumb and independent of the package's own
numerical paths: closed-form Gaussian/Gamma moments, brute-force quadrature,
dense grid eigensolves, Wick contraction counting.
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.sparse import diags, eye, kron
from scipy.sparse.linalg import eigsh


def gamma_fiducial_moment(beta, hbar, k):
    """<Q^k> of the normalized |psi|^2 ~ x^{2 beta/hbar - 1} e^{-2 beta x/hbar}
    computed by direct quadrature (the affine fiducial is Gamma-distributed)."""
    num = quad(lambda x: x ** k * x ** (2 * beta / hbar - 1) * math.exp(-2 * beta * x / hbar),
               0, np.inf)[0]
    den = quad(lambda x: x ** (2 * beta / hbar - 1) * math.exp(-2 * beta * x / hbar),
               0, np.inf)[0]
    return num / den


def gaussian_even_moment(var, k):
    """E[X^{2k}] for X ~ N(0, var): (2k-1)!! var^k."""
    out = 1.0
    for j in range(1, 2 * k, 2):
        out *= j
    return out * var ** k


def wick_expectation_q_power(q, var, n):
    """<0|(Q+q)^n|0> for ground-state Q-variance `var`, via the binomial +
    Gaussian-moment expansion (Wick's theorem for a single mode)."""
    total = 0.0
    for k in range(0, n + 1, 2):
        total += math.comb(n, k) * q ** (n - k) * gaussian_even_moment(var, k // 2)
    return total


def harmonic_levels(hbar, omega, n):
    return hbar * omega * (np.arange(n) + 0.5)


def zeta_cov_oracle(hbar, m, zeta):
    """(QQ, QS) covariance entries by inverting the quadratic form matrix
    (m/hbar) [[1, zeta], [zeta, 1]] of the two-mode Gaussian density."""
    prec = (2.0 * m / hbar) * np.array([[1.0, zeta], [zeta, 1.0]])
    cov = np.linalg.inv(prec)
    return cov[0, 0], cov[0, 1]


def zeta_ground_2d(hbar=1.0, m=1.0, zeta=0.5, n=160, span=6.0):
    """Moments of the two-mode fiducial by brute-force 2D grid ground state of
    H = -(hbar^2/2)(dxx + dss) + (m^2/2)[(x + zeta s)^2 + (s + zeta x)^2]."""
    ell = math.sqrt(hbar / m) * span / math.sqrt(1.0 - zeta)
    x = np.linspace(-ell, ell, n)
    h = x[1] - x[0]
    lap1 = diags([np.full(n - 1, 1.0), np.full(n, -2.0), np.full(n - 1, 1.0)],
                 [-1, 0, 1]) / h ** 2
    I = eye(n)
    lap = kron(lap1, I) + kron(I, lap1)
    X, S = np.meshgrid(x, x, indexing="ij")
    V = 0.5 * m ** 2 * ((X + zeta * S) ** 2 + (S + zeta * X) ** 2)
    H = -(hbar ** 2 / 2.0) * lap + diags(V.ravel())
    w, v = eigsh(H.tocsc(), k=1, which="SA")
    rho = (v[:, 0] ** 2).reshape(n, n)
    rho /= rho.sum()
    qq = float((rho * X ** 2).sum())
    qs = float((rho * X * S).sum())
    return qq, qs


def poisson_site_integral(f_amp, z_coef, hbar, lam_max=60.0, n=200001):
    """I(f) = int [1 - e^{i f lam / hbar}] e^{-z_coef lam^2} d lam / |lam|
    by symmetric quadrature with the even/odd split (imag part vanishes)."""
    lam = np.linspace(1e-9, lam_max, n)
    integrand = (1.0 - np.cos(f_amp * lam / hbar)) * np.exp(-z_coef * lam ** 2) / lam
    return 2.0 * np.trapezoid(integrand, lam)


def quartic_ground_moments_1d(mu, c2, c4, hbar, n=6000, span=10.0):
    """Ground-state even moments of -hbar^2/(2 mu) d^2 + c2 x^2 + c4 x^4 by a
    dense uniform-grid solve (independent of the package's site solver)."""
    sig = math.sqrt(hbar / (2.0 * math.sqrt(2.0 * mu * c2))) if c2 > 0 else 1.0
    L = span * max(sig, (hbar ** 2 / (mu * max(c4, 1e-12))) ** (1.0 / 6.0) if c4 > 0 else sig)
    from scipy.linalg import eigh_tridiagonal
    x = np.linspace(-L, L, n)
    h = x[1] - x[0]
    kin = hbar ** 2 / (2.0 * mu)
    d = 2.0 * kin / h ** 2 + c2 * x ** 2 + c4 * x ** 4
    e = np.full(n - 1, -kin / h ** 2)
    w, v = eigh_tridiagonal(d, e, select="i", select_range=(0, 0))
    rho = v[:, 0] ** 2
    rho /= rho.sum()
    return w[0], {2 * j: float((rho * x ** (2 * j)).sum()) for j in range(1, 5)}
