"""Independent reference values frozen into the unit tests.

Run with: python3 oracles.py
"""
import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp

mp.mp.dps = 40


def airy():
    print("# Airy (mpmath)")
    for s in [0, 1.5, 2.5, 5, 9, 12, -1, -5, -12]:
        print(f"{{{s}, {mp.nstr(mp.airyai(s), 20)}, {mp.nstr(mp.airyai(s, 1), 20)}}},")


def gamma():
    print("# arg Gamma(i nu), principal branch (mpmath)")
    for nu in [1e-3, 0.01, 0.1103178, 1, 3.7, 10]:
        g = mp.gamma(1j * nu)
        print(f"{{{nu}, {mp.nstr(mp.arg(g), 20)}, {mp.nstr(abs(g), 20)}}},")


def zs_reflection(amp, z, half=30.0):
    """r = b/a for psi_x = (-i z sigma3 + [[0, i y], [-i y, 0]]) psi, y = amp sech x."""
    def rhs(x, u):
        y = amp / np.cosh(x)
        p1, p2 = u[0] + 1j * u[1], u[2] + 1j * u[3]
        d1 = -1j * z * p1 + 1j * y * p2
        d2 = 1j * z * p2 - 1j * y * p1
        return [d1.real, d1.imag, d2.real, d2.imag]

    x0 = -half
    e = np.exp(-1j * z * x0)
    sol = solve_ivp(rhs, [x0, half], [e.real, e.imag, 0.0, 0.0], method="DOP853", rtol=1e-13, atol=1e-15)
    u = sol.y[:, -1]
    a = (u[0] + 1j * u[1]) * np.exp(1j * z * half)
    b = (u[2] + 1j * u[3]) * np.exp(-1j * z * half)
    return b / a


def scattering():
    print("# reflection of amp*sech(x) (scipy DOP853)")
    for amp in [0.3, 0.7]:
        for z in [0.0, 0.5, 1.0, -1.0]:
            r = zs_reflection(amp, z)
            print(f"{{{amp}, {z}, {{{r.real:.15g}, {r.imag:.15g}}}}},")


def pii():
    print("# Painleve II p'' = s p + 2 p^3 seeded by k Ai at s = 8 (scipy DOP853)")
    for k in [0.3, 0.5, 0.9]:
        s0 = 8.0
        u0 = [k * float(mp.airyai(s0)), k * float(mp.airyai(s0, 1))]
        sol = solve_ivp(lambda s, u: [u[1], s * u[0] + 2 * u[0] ** 3], [s0, -6.0], u0, method="DOP853",
                        rtol=1e-13, atol=1e-20, dense_output=True)
        for s in [0.0, -3.0, -6.0]:
            p, dp = sol.sol(s)
            print(f"{{{k}, {s}, {p:.15g}, {dp:.15g}}},")


def phi_bumps():
    print("# (1/pi) int_{-z0}^{z0} log|s - z0| d/ds log(1 - f(s)) ds (mpmath tanh-sinh)")
    bumps = [
        ("0.5 exp(-s^2)", lambda s: 0.5 * mp.exp(-s ** 2), 1.0),
        ("0.9 exp(-2 s^2)", lambda s: 0.9 * mp.exp(-2 * s ** 2), 0.7),
        ("0.6 sech(1.5 s)^2", lambda s: 0.6 * mp.sech(1.5 * s) ** 2, 1.5),
    ]
    for name, f, z0 in bumps:
        g = lambda s: mp.diff(lambda u: mp.log(1 - f(u)), s)
        val = mp.quad(lambda s: mp.log(abs(s - z0)) * g(s), [-z0, 0, z0]) / mp.pi
        print(f"{name} z0={z0}: {mp.nstr(val, 20)}")


def linear_mkdv():
    print("# linear flow y_t + y_xxx = 0 from amp*sech(x) at t = 1, per unit amplitude (mpmath)")
    t = 1
    for x in [-6, -3, -1, 0, 1, 3]:
        f = lambda k: mp.pi * mp.sech(mp.pi * k / 2) * mp.cos(k * x + k ** 3 * t)
        val = mp.quad(f, mp.linspace(0, 40, 81)) / mp.pi
        print(f"{{{x}, {mp.nstr(val, 20)}}},")


if __name__ == "__main__":
    airy()
    gamma()
    scattering()
    pii()
    phi_bumps()
    linear_mkdv()
