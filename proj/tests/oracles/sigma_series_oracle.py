"""Independent oracles frozen into the C++ tests.

sigma is evaluated from its Taylor expansion via the Weierstrass recursion
for the coefficients a_{m,n}; no theta functions or quasi-periodicity are
involved. g2 for Z+Zi uses the lemniscatic closed form.
"""
import mpmath as mp

mp.mp.dps = 250


def coeffs(maxdeg):
    # a[m][n] for 4m+6n+1 <= maxdeg, filled by increasing (2m+3n)
    a = {}
    pairs = sorted(((m, n) for m in range(maxdeg // 4 + 2) for n in range(maxdeg // 6 + 2)
                    if 4 * m + 6 * n + 1 <= maxdeg), key=lambda p: 2 * p[0] + 3 * p[1])

    def A(m, n):
        if m < 0 or n < 0:
            return mp.mpf(0)
        return a[(m, n)] if (m, n) in a else None

    for (m, n) in pairs:
        if (m, n) == (0, 0):
            a[(0, 0)] = mp.mpf(1)
            continue
        t1 = A(m + 1, n - 1)
        t2 = A(m - 2, n + 1)
        t3 = A(m - 1, n)
        assert t1 is not None and t2 is not None and t3 is not None, (m, n)
        a[(m, n)] = 3 * (m + 1) * t1 + mp.mpf(16) / 3 * (n + 1) * t2 - mp.mpf(1) / 3 * (2 * m + 3 * n - 1) * (4 * m + 6 * n - 1) * t3
    return a


def sigma(z, g2, g3, maxdeg=1200):
    a = coeffs(maxdeg)
    s = mp.mpc(0)
    for (m, n), c in a.items():
        k = 4 * m + 6 * n + 1
        s += c * (g2 / 2) ** m * (2 * g3) ** n * z ** k / mp.factorial(k)
    return s


g2_sq = mp.gamma(mp.mpf(1) / 4) ** 8 / (16 * mp.pi ** 2)
print("g2(Z+Zi) =", mp.nstr(g2_sq, 20))
for z in [mp.mpc(0.3, 0.2), mp.mpc(0.2, 0), mp.mpc(1.2, 0), mp.mpc(10.3, 0.4)]:
    s1 = sigma(z, g2_sq, 0, 900)
    s2 = sigma(z, g2_sq, 0, 1300)
    print(z, "sigma =", mp.nstr(s2, 20), " log|sigma| =", mp.nstr(mp.log(abs(s2)), 20),
          " arg =", mp.nstr(mp.arg(s2), 20), " conv:", mp.nstr(abs(s1 - s2) / abs(s2), 3))

print("E2(i)=3/pi", mp.nstr(3 / mp.pi, 20))
phi = lambda y: 24 * mp.e ** (-2 * mp.pi * y) / (1 - mp.e ** (-2 * mp.pi * y)) ** 3
print("phi(sqrt3/2) =", mp.nstr(phi(mp.sqrt(3) / 2), 15))
y = mp.sqrt(3) / 2
for i in range(5):
    print("y%d = %s" % (i, mp.nstr(y, 15)))
    y = 6 * (1 - phi(y)) / (mp.pi * (1 + phi(y)) ** 2)
