"""Independent reference computations used to check the production code paths.

Nothing here calls the iterative solvers under test. Property polynomials are
re-typed from the published table and summed term by term.
"""

import math

import numpy as np

A = [0.9923, 0.2367, -1.8524, 6.0832, -8.8940, 7.0971, -3.2347, 0.7946, -0.0819, 0.4222, 0.0011]
B = [-0.7189, 8.7475, -15.8632, 17.2541, -10.2338, 3.0818, -0.3611, 0.0039, 0.0556, -0.0016]


def cp_terms(T, f=0.0):
    """cp in J/(kg K); accepts arrays."""
    th = np.asarray(T, dtype=float) / 1000.0
    air = sum(A[k] * th ** k for k in range(9))
    fuel = sum(B[k] * th ** k for k in range(8))
    return 1000.0 * (air + f / (1.0 + f) * fuel)


def h_terms(T, f=0.0):
    th = T / 1000.0
    air = A[9] + sum(A[k] / (k + 1) * th ** (k + 1) for k in range(9))
    fuel = B[8] + sum(B[k] / (k + 1) * th ** (k + 1) for k in range(8))
    return 1e6 * (air + f / (1.0 + f) * fuel)


def s_terms(T, f=0.0):
    th = T / 1000.0
    air = A[10] + A[0] * math.log(th) + sum(A[k] / k * th ** k for k in range(1, 9))
    fuel = B[9] + B[0] * math.log(th) + sum(B[k] / k * th ** k for k in range(1, 8))
    return 1e3 * (air + f / (1.0 + f) * fuel)


def R_of(f):
    return 287.05 - 0.0099 * f + 1e-7 * f * f


def polytropic_path_temperature(T_in, pr, e, f=0.0, steps=100_000):
    """Integrate dT/T = R / (e cp(T)) dlnP along ``steps`` log-spaced pressure steps (RK4)."""
    R = R_of(f)
    dlnp = math.log(pr) / steps

    def rhs(T):
        return T * R / (e * cp_terms(T, f))

    T = float(T_in)
    for _ in range(steps):
        k1 = rhs(T)
        k2 = rhs(T + 0.5 * dlnp * k1)
        k3 = rhs(T + 0.5 * dlnp * k2)
        k4 = rhs(T + dlnp * k3)
        T += dlnp * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
    return T


def polytropic_path_temperature_vec(T_in, pr, e, f=0.0, steps=100_000):
    """Vectorised over cases: arrays ``T_in``, ``pr``, ``e`` of equal length."""
    T = np.array(T_in, dtype=float)
    pr = np.asarray(pr, dtype=float)
    e = np.asarray(e, dtype=float)
    R = R_of(f)
    dlnp = np.log(pr) / steps

    def rhs(T):
        return T * R / (e * cp_terms(T, f))

    for _ in range(steps):
        k1 = rhs(T)
        k2 = rhs(T + 0.5 * dlnp * k1)
        k3 = rhs(T + 0.5 * dlnp * k2)
        k4 = rhs(T + dlnp * k3)
        T = T + dlnp * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
    return T


def bisect(g, lo, hi, tol=1e-13, max_iter=200):
    glo = g(lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def burner_far_bisection(T_in, Tt4, eta_b=0.99, lhv=43124e3):
    """Root of (1 + f) h(Tt4, f) - h(T_in, 0) - eta_b f LHV."""
    h_in = h_terms(T_in, 0.0)
    return bisect(lambda f: (1 + f) * h_terms(Tt4, f) - h_in - eta_b * f * lhv, 0.0, 0.1)


def isa(H):
    g0, R, L = 9.80665, 287.05287, 0.0065
    if H <= 11000:
        T = 288.15 - L * H
        return T, 101325.0 * (T / 288.15) ** (g0 / (R * L))
    T11, P11 = isa(11000.0)
    return T11, P11 * math.exp(-g0 * (H - 11000.0) / (R * T11))


def constant_gamma_nozzle_velocity(Tt, pr, cp, gamma):
    return math.sqrt(2 * cp * Tt * (1 - pr ** (-(gamma - 1) / gamma)))


def decode_reference(bits, bounds):
    """Plain-Python chromosome decoding, one 6-bit group at a time."""
    out = []
    for i, (lo, hi) in enumerate(bounds):
        group = bits[6 * i: 6 * i + 6]
        k = int("".join(str(int(b)) for b in group), 2)
        out.append(lo + k * (hi - lo) / 63)
    return out
