"""Independent high-precision oracle for the Poisson mass of the
Block set {k : m^2 <= k < m^2 + m, m even} sampled at block-aligned times t = m^2 + m/2.

Prints the per-m values, the even/odd extremes and the max - min spread over the sampled m
that tests/test_tauberian.cpp and tests/acceptance.cpp freeze.
"""
import mpmath as mp

mp.mp.dps = 40


def in_block(k):
    m = mp.isqrt(k) if hasattr(mp, "isqrt") else int(k ** 0.5)
    while m * m > k:
        m -= 1
    while (m + 1) * (m + 1) <= k:
        m += 1
    return m % 2 == 0 and k < m * m + m


def lim1(t):
    t = mp.mpf(t)
    lo = max(0, int(t - 12 * mp.sqrt(t)) - 5)
    hi = int(t + 12 * mp.sqrt(t)) + 5
    s = mp.mpf(0)
    for k in range(lo, hi + 1):
        if in_block(k):
            s += mp.e ** (k * mp.log(t) - t - mp.loggamma(k + 1))
    return s


vals = {m: lim1(m * m + mp.mpf(m) / 2) for m in range(10, 101)}
for m in (10, 11, 40, 41, 99, 100):
    print(m, mp.nstr(vals[m], 17))
even = [vals[m] for m in vals if m % 2 == 0]
odd = [vals[m] for m in vals if m % 2 == 1]
print("min even", mp.nstr(min(even), 17), "max odd", mp.nstr(max(odd), 17))
print("gap", mp.nstr(max(vals.values()) - min(vals.values()), 17))
