"""High-precision reference values frozen into the C++ unit tests.

Run with: python3 tests/oracles/reference_values.py
Everything here is computed with mpmath at 40 significant digits and is
independent of the C++ implementation.
"""
import mpmath as mp

mp.mp.dps = 40


def log_bessel_i(nu, x):
    return mp.log(mp.besseli(nu, x))


def log_pdf_ncx2(k, lam, x):
    k, lam, x = mp.mpf(k), mp.mpf(lam), mp.mpf(x)
    nu = k / 2 - 1
    return (-(x + lam) / 2 + (k / 4 - mp.mpf(1) / 2) * mp.log(x / lam)
            + log_bessel_i(nu, mp.sqrt(lam * x)) - mp.log(2))


def pdf_ncx2(k, lam, x):
    return mp.exp(log_pdf_ncx2(k, lam, x))


def entropy_integrals(k, lam, alpha):
    f = lambda x: pdf_ncx2(k, lam, x)
    ia = mp.quad(lambda x: f(x) ** alpha, [0, 1, 5, 20, 60, mp.inf])
    ja = mp.quad(lambda x: f(x) ** alpha * log_pdf_ncx2(k, lam, x),
                 [0, 1, 5, 20, 60, mp.inf])
    return ia, ja


def main():
    print("# log_gamma")
    for x in ["1e-5", "0.1", "0.5", "1.5", "3.7", "10", "123.456", "1e4", "1e6"]:
        print(x, mp.nstr(mp.loggamma(mp.mpf(x)), 20))
    print("# digamma")
    for x in ["1e-3", "0.1", "0.5", "1.5", "3.7", "10", "123.456", "1e4"]:
        print(x, mp.nstr(mp.digamma(mp.mpf(x)), 20))
    print("# log_bessel_i")
    for nu in ["-0.75", "-0.3", "0", "0.5", "1", "2.5", "10", "50", "100"]:
        for x in ["1e-6", "0.1", "1", "10", "29.5", "31", "100", "1000", "1e4", "1e8"]:
            print(nu, x, mp.nstr(log_bessel_i(mp.mpf(nu), mp.mpf(x)), 20))
    print("# I_1/2(1)", mp.nstr(mp.besseli(0.5, 1), 20))
    print("# gamma_log_integral(1,2)", mp.nstr((-mp.euler - mp.log(2)) / 2, 20))
    print("# gamma_log_integral(2,2)", mp.nstr(mp.mpf(2) ** -2 * (mp.digamma(2) - mp.log(2)), 20))
    print("# ncx2 log pdf")
    for (k, lam, x) in [(4, 4, 1), (2, 2, 2), (3, 2, 5), (1.5, 0.5, 0.1), (8, 25, 30),
                        (2, 1, 1), (4, 4, 200), (20, 30, 1e-3)]:
        print(k, lam, x, mp.nstr(log_pdf_ncx2(k, lam, x), 20))
    print("# ncx2 entropy integrals (k, lam, alpha, I, J)")
    for (k, lam, alpha) in [(4, 4, 1), (4, 4, 2), (2, 1, 0.5), (3, 2, 3)]:
        ia, ja = entropy_integrals(k, lam, alpha)
        print(k, lam, alpha, mp.nstr(ia, 18), mp.nstr(ja, 18))
    print("# CIR/Bessel densities")
    # CIR a=b=sigma=r0=1, t=log 2, x=1: c=1/8, nu=1
    a, b, s, r0, t = 1, 1, 1, 1, mp.log(2)
    c = s**2 / (4 * b) * (1 - mp.exp(-b * t))
    nu = 2 * mp.mpf(a) / s**2 - 1
    x = mp.mpf(1)
    p = (1 / (2 * c) * (x / (r0 * mp.exp(-b * t))) ** (nu / 2)
         * mp.exp(-(x + r0 * mp.exp(-b * t)) / (2 * c))
         * mp.besseli(nu, mp.exp(-b * t / 2) * mp.sqrt(x * r0) / c))
    print("cir p_t(1)", mp.nstr(p, 20))


main()
