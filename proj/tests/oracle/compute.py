"""Independent reference values for the C++ test suite.

Uses only exact integer arithmetic (math.isqrt, fractions) and mpmath, none of
the library code. Run: python3 tests/oracle/compute.py
"""
from fractions import Fraction
from math import isqrt, gcd, floor
import mpmath

mpmath.mp.dps = 80


def near_int_sqrt(n4c, num, den):
    """||sqrt(n4c)|| <= num/den, exactly."""
    f = isqrt(n4c)
    # x in [f, f+1); distance <= e iff x <= f + e or x >= f + 1 - e
    return den * den * n4c <= (den * f + num) ** 2 or den * den * n4c >= (den * f + den - num) ** 2


def members_sqrt2_deg(T, d, num, den, D=2):
    out = []
    for n in range(T + 1):
        if near_int_sqrt(D * n ** (2 * d), num, den):
            out.append(n)
    return out


def sumset_complement(members, T, k):
    a = 0
    for m in members:
        a |= 1 << m
    mask = (1 << (T + 1)) - 1
    s = a
    for _ in range(k - 1):
        acc = 0
        for m in members:
            acc |= s << m
        s = acc & mask
    return [n for n in range(1, T + 1) if not (s >> n) & 1]


def cf_sqrt(D, count):
    a0 = isqrt(D)
    m, d, a = 0, 1, a0
    out = [a0]
    for _ in range(count):
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        out.append(a)
    return out


def convergents(digits):
    p0, q0, p1, q1 = 1, 0, digits[0], 1
    res = [(p1, q1)]
    for a in digits[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        res.append((p1, q1))
    return res


def exceptional(count, primes=(2, 3)):
    def k_of(i):
        return max(1, isqrt(i))
    qm2, qm1 = 0, 1
    a_list = []
    for i in range(1, count + 1):
        # primes dividing q_{i-1} impose nothing: q_i = q_{i-2} mod p then
        conds = []
        for p in primes:
            if qm1 % p == 0:
                continue
            target = i % 2 == (0 if p == 2 else 1)
            conds.append((p ** k_of(i), 0) if target else (p, qm1 % p))
        a = 1
        while not all((a * qm1 + qm2 - r) % m == 0 for m, r in conds):
            a += 1
        a_list.append(a)
        qm2, qm1 = qm1, a * qm1 + qm2
    return a_list


def best_approx_q(alpha, Q):
    best = None
    out = []
    for q in range(1, Q + 1):
        d = abs(q * alpha - mpmath.nint(q * alpha))
        if best is None or d < best:
            best = d
            out.append(q)
    return out


if __name__ == "__main__":
    print("complement sqrt2 eps=1/10 T=1e5:", sumset_complement(members_sqrt2_deg(100000, 2, 1, 10), 100000, 2))
    print("complement sqrt2 k=3 T=1e4:", sumset_complement(members_sqrt2_deg(10000, 2, 1, 10), 10000, 3))
    print("complement sqrt2 d=3 T=1e4:", sumset_complement(members_sqrt2_deg(10000, 3, 1, 10), 10000, 2))
    print("members sqrt2 eps=1/10 T=1000:", len(members_sqrt2_deg(1000, 2, 1, 10)))
    print("cf sqrt7:", cf_sqrt(7, 8), "cf sqrt13:", cf_sqrt(13, 10))
    c = convergents(cf_sqrt(2, 12))
    print("sqrt2 convergents:", c)
    s2 = mpmath.sqrt(2)
    print("sqrt2 delta_n:", [mpmath.nstr(q * q * (s2 - mpmath.mpf(p) / q), 20) for p, q in c[:8]])
    phi = (1 + mpmath.sqrt(5)) / 2
    cp = convergents([1] * 12)
    print("phi delta_n:", [mpmath.nstr(q * q * (phi - mpmath.mpf(p) / q), 20) for p, q in cp[:8]])
    print("exceptional:", exceptional(24))
    print("best approx sqrt2:", best_approx_q(s2, 1000))
    N = 10000
    S = mpmath.fsum(mpmath.expj(2 * mpmath.pi * n * s2) for n in range(1, N + 1))
    print("weyl n*sqrt2 N=1e4:", mpmath.nstr(abs(S) / N, 15))
    S = mpmath.fsum(mpmath.expj(2 * mpmath.pi * n * n * s2) for n in range(1, 1001))
    print("weyl n^2*sqrt2 N=1000:", mpmath.nstr(abs(S) / 1000, 15))
    g = 2 * 35 * 35 * s2 - 99 * 35
    print("gamma(35):", mpmath.nstr(g, 20), "eps1:", mpmath.nstr((1 - 1 / (4 * s2)) / 4, 20))
    Ns = [1, 35]
    while len(Ns) < 6:
        Ns.append(34 * Ns[-1] - Ns[-2])
    print("pell N:", Ns)
