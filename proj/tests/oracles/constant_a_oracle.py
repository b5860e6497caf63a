"""Reference value of the boundary constant a for the default bump mollifier.

Independent of the C++ code: closed-form polynomial autocorrelation and
adaptive Cartesian quadrature in (s, y), split at s = 0.
"""
import numpy as np
from numpy.polynomial import polynomial as P
from scipy import integrate, special

bump = P.Polynomial([1.0, 0.0, -1.0]) ** 3 * (35.0 / 32.0)


def autocorr(tau):
    t = abs(tau)
    if t >= 2.0:
        return 0.0
    shifted = P.Polynomial(bump(P.Polynomial([t, 1.0])).coef)
    prod = (bump * shifted).integ()
    return prod(1.0 - t) - prod(-1.0)


def bracket(s, y):
    ay = abs(y)
    half = 0.5 * special.erfc(ay / np.sqrt(2.0 * abs(s)))
    if s < 0:
        return half
    return half - 2.0 * ay * np.exp(-y * y / (2.0 * s)) / np.sqrt(2.0 * np.pi * s)


def f(y, s):
    return autocorr(s) * autocorr(y) * bracket(s, y)


opts = dict(epsabs=1e-14, epsrel=1e-13)
total = 0.0
for s0, s1 in ((-2.0, 0.0), (0.0, 2.0)):
    val, err = integrate.dblquad(f, s0, s1, 0.0, 2.0, **opts)
    total += 2.0 * val
print(f"{total:.15f}")
