"""Modified Bessel functions and the regularized kernel combinations.

The crack-line kernels of this solver are built from K0, K1, K2 (modified
Bessel functions of the second kind) and from one Meijer-G function,

    sgn(x) * G_{1,3}^{2,1}( x^2/(4 l^2) | 1 ; -1/2, 1/2, 0 ),

which carries the couple-stress response of a rotation-jump defect.  All of
these blow up at zero argument; what the kernels actually need are the
singularity-subtracted combinations

    k2_reg     = 2 l^2/x^2 - K2(|x|/l)          -> 1/2        as x -> 0
    k0_log_reg = K0(|x|/l) + ln(|x|/l)          -> ln 2 - g   as x -> 0
    k3_reg     = meijer_kernel(x, l) + 4 l/x    -> 0          as x -> 0

(g is Euler's constant).  Near zero the defining differences suffer
catastrophic cancellation, so each combination switches to an explicit
power series below ``_SERIES_SWITCH``; both branches agree to ~1e-13 at
the switch point.

The Meijer-G function itself reduces to elementary Bessel quantities,

    sgn(x) * G(x^2/4l^2) = -4 sgn(x) * [ K1(w) + int_0^w K0(v) dv ],
    w = |x|/l,

an identity obtained by splitting the defining sine-transform integrand
sqrt(1 + l^2 xi^2)/xi into 1/(xi*sqrt(1+l^2 xi^2)) + l^2 xi/sqrt(1+l^2 xi^2)
and using the standard cosine/sine transforms of (1+u^2)^(-1/2).  It fixes
the limits -4l/x (x -> 0) and -2pi*sgn(x) (|x| -> oo), and is validated in
the test suite against a finite-part quadrature oracle and an independent
residue-series expansion.

All functions are pure and accept scalars or numpy arrays.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

__all__ = [
    "bessel_k",
    "k2_reg",
    "k0_log_reg",
    "meijer_kernel",
    "k3_reg",
    "int_k0",
]

_EULER_GAMMA = np.euler_gamma

# Series/direct crossover for the regularized combinations.  At w = 1 the
# direct evaluation loses < 1 digit to cancellation and the series needs
# ~15 terms for full precision.
_SERIES_SWITCH = 1.0
_SERIES_TERMS = 24

# int_0^w K0 differs from pi/2 by < 1e-14 beyond this point; capping the
# argument also keeps the I0 companion integral inside iti0k0 from
# overflowing.
_ITK0_TAIL = 30.0


def bessel_k(order, z, scaled=False):
    """Modified Bessel function of the second kind, order 0, 1 or 2.

    Parameters
    ----------
    order : int
        One of 0, 1, 2.
    z : float or ndarray
        Strictly positive argument.
    scaled : bool
        If True, return exp(z)*K_order(z) (usable for z up to ~1e300).

    Raises
    ------
    ValueError
        If ``order`` is not in {0, 1, 2} or any ``z`` is not positive.
    """
    z = np.asarray(z, dtype=float)
    if np.any(~(z > 0.0)):
        raise ValueError("bessel_k requires z > 0")
    if order == 0:
        out = _sp.k0e(z) if scaled else _sp.k0(z)
    elif order == 1:
        out = _sp.k1e(z) if scaled else _sp.k1(z)
    elif order == 2:
        out = _sp.kve(2, z) if scaled else _sp.kn(2, z)
    else:
        raise ValueError(f"bessel_k order must be 0, 1 or 2, got {order!r}")
    return out if out.ndim else float(out)


def _k2c_series(w):
    """Series for 2/w^2 - K2(w) - 1/2 (valid for small w, w >= 0).

    From the ascending series of K2,
        2/w^2 - K2(w) - 1/2 = ln(w/2) I2(w)
            - (1/2)(w/2)^2 sum_k [psi(k+1)+psi(k+3)] (w^2/4)^k / (k! (k+2)!).
    Both sums are accumulated from the common term
    t_k = (w/2)^(2k+2) / (k! (k+2)!).
    """
    w = np.asarray(w, dtype=float)
    q = 0.25 * w * w
    term = 0.5 * q                      # t_0 = (w/2)^2 / (0! 2!)
    i2 = np.zeros_like(w)
    psum = np.zeros_like(w)
    for k in range(_SERIES_TERMS):
        i2 = i2 + term
        psum = psum + 0.5 * term * (_sp.digamma(k + 1) + _sp.digamma(k + 3))
        term = term * q / ((k + 1) * (k + 3))
    with np.errstate(divide="ignore", invalid="ignore"):
        logw = np.where(w > 0.0, np.log(0.5 * w), 0.0)
    # ln(w/2)*I2 -> 0 as w -> 0 because I2 = O(w^2)
    return np.where(w > 0.0, logw * i2, 0.0) - psum


def _k2c(w):
    """2/w^2 - K2(w) - 1/2 on [0, inf); series below the switch point."""
    w = np.asarray(w, dtype=float)
    small = w < _SERIES_SWITCH
    out = np.empty_like(w)
    if np.any(small):
        out[small] = _k2c_series(w[small])
    if np.any(~small):
        wb = w[~small]
        out[~small] = 2.0 / (wb * wb) - _sp.kn(2, wb) - 0.5
    return out


def _k0_log_series(w):
    """Series for K0(w) + ln(w) (small w, w >= 0).

    K0(w) = -(ln(w/2)+g) I0(w) + sum_{k>=1} H_k (w^2/4)^k / (k!)^2, hence
    K0(w) + ln(w) = ln2 - g + (ln(w/2)+g)(1 - I0(w)) + sum_{k>=1} H_k ... .
    """
    w = np.asarray(w, dtype=float)
    q = 0.25 * w * w
    i0m1 = np.zeros_like(w)             # I0(w) - 1
    hsum = np.zeros_like(w)
    term = np.ones_like(w)
    harmonic = 0.0
    for k in range(1, _SERIES_TERMS + 1):
        term = term * q / (k * k)
        harmonic += 1.0 / k
        i0m1 = i0m1 + term
        hsum = hsum + harmonic * term
    with np.errstate(divide="ignore", invalid="ignore"):
        logw = np.where(w > 0.0, np.log(0.5 * w), 0.0)
    base = np.log(2.0) - _EULER_GAMMA
    return base - np.where(w > 0.0, (logw + _EULER_GAMMA) * i0m1, 0.0) + hsum


def _k1_minus_recip_series(w):
    """Series for K1(w) - 1/w (small w, w >= 0).

    K1(w) - 1/w = ln(w/2) I1(w)
        - (1/2)(w/2) sum_k [psi(k+1)+psi(k+2)] (w^2/4)^k / (k! (k+1)!).
    """
    w = np.asarray(w, dtype=float)
    q = 0.25 * w * w
    term = 0.5 * w                      # (w/2) / (0! 1!)
    i1 = np.zeros_like(w)
    psum = np.zeros_like(w)
    for k in range(_SERIES_TERMS):
        i1 = i1 + term
        psum = psum + 0.5 * term * (_sp.digamma(k + 1) + _sp.digamma(k + 2))
        term = term * q / ((k + 1) * (k + 2))
    with np.errstate(divide="ignore", invalid="ignore"):
        logw = np.where(w > 0.0, np.log(0.5 * w), 0.0)
    return np.where(w > 0.0, logw * i1, 0.0) - psum


def _k1_minus_recip(w):
    """K1(w) - 1/w on [0, inf); equals 0 at w = 0."""
    w = np.asarray(w, dtype=float)
    small = w < _SERIES_SWITCH
    out = np.empty_like(w)
    if np.any(small):
        out[small] = _k1_minus_recip_series(w[small])
    if np.any(~small):
        wb = w[~small]
        out[~small] = _sp.k1(wb) - 1.0 / wb
    return out


def int_k0(w):
    """int_0^w K0(v) dv for w >= 0; tends to pi/2 as w -> oo."""
    w = np.asarray(w, dtype=float)
    if np.any(w < 0.0):
        raise ValueError("int_k0 requires w >= 0")
    out = np.where(
        w < _ITK0_TAIL,
        _sp.iti0k0(np.minimum(w, _ITK0_TAIL))[1],
        0.5 * np.pi,
    )
    return out if out.ndim else float(out)


def k2_reg(x_abs, ell):
    """Regularized combination 2 l^2/x^2 - K2(|x|/l).

    Finite everywhere: equals 1/2 at x = 0 and decays to 2 l^2/x^2 once the
    Bessel term underflows, so solver kernels built on it degrade gracefully
    to their classical-elasticity limits at extreme a/l.
    """
    if ell <= 0.0:
        raise ValueError("k2_reg requires ell > 0")
    x_abs = np.abs(np.asarray(x_abs, dtype=float))
    out = 0.5 + _k2c(x_abs / ell)
    return out if out.ndim else float(out)


def k0_log_reg(x_abs, ell):
    """Regularized combination K0(|x|/l) + ln(|x|/l).

    Finite everywhere: equals ln 2 - EulerGamma at x = 0 and grows like
    ln(|x|/l) once K0 underflows.
    """
    if ell <= 0.0:
        raise ValueError("k0_log_reg requires ell > 0")
    w = np.abs(np.asarray(x_abs, dtype=float)) / ell
    small = w < _SERIES_SWITCH
    out = np.empty_like(w)
    if np.any(small):
        out[small] = _k0_log_series(w[small])
    if np.any(~small):
        wb = w[~small]
        out[~small] = _sp.k0(wb) + np.log(wb)
    return out if out.ndim else float(out)


def meijer_kernel(x, ell):
    """Odd kernel sgn(x) * G_{1,3}^{2,1}(x^2/(4 l^2) | 1; -1/2, 1/2, 0).

    Evaluated through the elementary identity

        sgn(x) * G = -4 sgn(x) * [ K1(|x|/l) + int_0^{|x|/l} K0(v) dv ],

    giving -4 l/x + O(x ln|x|) near zero and -2 pi sgn(x) at infinity.

    Raises
    ------
    ValueError
        At x = 0 (Cauchy-singular point); use :func:`k3_reg` there.
    """
    if ell <= 0.0:
        raise ValueError("meijer_kernel requires ell > 0")
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise ValueError("meijer_kernel is singular at x = 0; use k3_reg")
    w = np.abs(x) / ell
    out = -4.0 * np.sign(x) * (_sp.k1(w) + int_k0(w))
    return out if out.ndim else float(out)


def k3_reg(x, ell):
    """Regular part of the rotation-defect kernel: meijer_kernel + 4 l/x.

    The Cauchy part -4 l/x of the Meijer-G kernel cancels against K1's 1/w
    pole, leaving

        k3_reg = -4 sgn(x) * [ (K1(w) - 1/w) + int_0^w K0(v) dv ],

    which is odd, continuous on the whole line, zero at x = 0, and tends to
    -2 pi sgn(x) + 4 l/x at large |x|.
    """
    if ell <= 0.0:
        raise ValueError("k3_reg requires ell > 0")
    x = np.asarray(x, dtype=float)
    w = np.abs(x) / ell
    out = -4.0 * np.sign(x) * (_k1_minus_recip(w) + int_k0(w))
    return out if out.ndim else float(out)
