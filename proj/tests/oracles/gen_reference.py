"""Reference values for the unit tests, computed with mpmath at 40 digits."""
import mpmath as mp

mp.mp.dps = 40


def s_plus(zeta):
    q = mp.mpf(zeta) ** 2 - mp.mpf(1) / 4
    return mp.mpf(-0.5) - 1j * mp.sqrt(q) if q >= 0 else mp.mpf(-0.5) + mp.sqrt(-q)


def c_nu(zeta):
    nu = (mp.mpf(-0.5) - s_plus(zeta)) / 1j
    return 1 / (2 * mp.cos(1j * nu * mp.pi))


def omega(zeta, r, k):
    s = s_plus(zeta)
    k = abs(k)
    g = mp.gamma
    return (k + s) / r * g((k + s) / 2) * g((k + 1 - s) / 2) / (g((k - s) / 2) * g((k + 1 + s) / 2))


def kernel(zeta, theta):
    return c_nu(zeta) * mp.legenp(s_plus(zeta), 0, -mp.cos(theta), type=3)


def show(name, v):
    v = mp.mpc(v)
    if abs(v.imag) < mp.mpf(10) ** -30 * max(1, abs(v)):
        print(f"{name} = {mp.nstr(v.real, 20)}")
    else:
        print(f"{name} = {mp.nstr(v.real, 20)} + {mp.nstr(v.imag, 20)}i")


show("gamma(0.25+1.3i)", mp.gamma(mp.mpc(0.25, 1.3)))
show("gamma(-2.5+0.5i)", mp.gamma(mp.mpc(-2.5, 0.5)))
show("loggamma(50+30i)", mp.loggamma(mp.mpc(50, 30)))
show("gamma(4.2+2.1i)/gamma(3.7+2.1i)", mp.gamma(mp.mpc(4.2, 2.1)) / mp.gamma(mp.mpc(3.7, 2.1)))
show("gamma(0.8)/gamma(0.3)", mp.gamma(0.8) / mp.gamma(0.3))
show("digamma(1.5+2i)", mp.digamma(mp.mpc(1.5, 2)))
show("hyp2f1(0.3,0.7,1.9,0.6)", mp.hyp2f1(0.3, 0.7, 1.9, 0.6))
show("P_{-1/2-2i}(0.3)", mp.legenp(mp.mpc(-0.5, -2), 0, 0.3, type=3))
show("P_{-1/2-2i}(-0.95)", mp.legenp(mp.mpc(-0.5, -2), 0, -0.95, type=3))
show("P_{-0.2}(0.5)", mp.legenp(-0.2, 0, 0.5, type=3))
show("P_{-0.2}(-0.999)", mp.legenp(-0.2, 0, -0.999, type=3))
for z in (1, 0.3):
    show(f"c_nu(zeta={z})", c_nu(z))
for z, r, k in ((1, 1, 0), (1, 1, 1), (1, 1, 7), (1, 1, 100), (1, 1, 1000), (0.3, 1, 0), (0.3, 1, 5),
                (0.5, 1, 0), (2, 0.5, 3), (0.1, 2, 12)):
    show(f"omega(zeta={z},r={r},k={k})", omega(z, r, k))
show("kernel(zeta=1,pi/2)", kernel(1, mp.pi / 2))
show("kernel(zeta=0.3,0.1)", kernel(0.3, mp.mpf(0.1)))
show("kernel(zeta=2,2.5)", kernel(2, mp.mpf(2.5)))
