#!/usr/bin/env python3
"""Independent brute-force oracles for the frozen values in the C++ unit tests.

Everything here is plain triple/double loops over small boxes, deliberately
sharing no logic with the library. Run it to regenerate the numbers that the
tests assert; output is human-readable.
"""
from fractions import Fraction
from itertools import product
from math import gcd, sqrt


def Q0(x, y, z):
    return x * x - y * z


def Q1(x, y, z):
    return x * x + 3 * x * y + 5 * y * z + 7 * z * z


def special(a, b, d, e, f):
    def q(s, t):
        L = b * s + e * t
        g = a * s * s + d * s * t + f * t * t
        return (s * L, -g, t * L)
    return q


def gcd3(a, b, c):
    return gcd(gcd(a, b), c)


def N_brute(Q, B):
    # ||x||_inf <= B, primitive, Q(x)=0: plain triple loop
    n = 0
    for x, y, z in product(range(-B, B + 1), repeat=3):
        if (x, y, z) != (0, 0, 0) and gcd3(x, y, z) == 1 and Q(x, y, z) == 0:
            n += 1
    return n


def script_N(q, B, box=60):
    n = 0
    for s in range(-box, box + 1):
        for t in range(1, box + 1):
            if gcd(s, t) != 1:
                continue
            v = q(s, t)
            lam = gcd3(*v)
            if max(abs(c) for c in v) <= lam * B:
                n += 1
    return n


def rho_star(q, n):
    c = 0
    for s in range(n):
        for t in range(n):
            if gcd3(s, t, n) != 1:
                continue
            if all(v % n == 0 for v in q(s, t)):
                c += 1
    return c


def M_count(q, T, n, sig, tau, box=40, prim=False):
    c = 0
    for s in range(-box, box + 1):
        for t in range(1, box + 1):
            if (s - sig) % n or (t - tau) % n:
                continue
            if prim and gcd(s, t) != 1:
                continue
            if max(abs(v) for v in q(s, t)) <= T:
                c += 1
    return c


def Nstar(Q, p, k):
    m = p ** k
    c = 0
    for x, y, z in product(range(m), repeat=3):
        if x % p == 0 and y % p == 0 and z % p == 0:
            continue
        if Q(x, y, z) % m == 0:
            c += 1
    return c


def sigma_inf_Q0_sup(eps, n=400):
    # (1/2eps) vol{|x^2 - yz| <= eps, |x|,|y|,|z| <= 1} by midpoint rule in (y,z)
    # with the exact x-measure for each (y,z).
    h = 2.0 / n
    total = 0.0
    for i in range(n):
        y = -1 + (i + 0.5) * h
        for j in range(n):
            z = -1 + (j + 0.5) * h
            c = y * z
            # measure of x in [-1,1] with c-eps <= x^2 <= c+eps
            hi = min(1.0, sqrt(max(c + eps, 0.0)))
            lo = sqrt(max(c - eps, 0.0))
            total += 2 * max(0.0, hi - min(lo, hi))
    return total * h * h / (2 * eps)


def main():
    print("N(Q0,B) B=1,2,4:", [N_brute(Q0, B) for B in (1, 2, 4)])
    q0 = special(1, 0, 0, -1, 0)
    q1 = special(1, 3, 0, 5, 7)
    print("scriptN(Q0,B) B=1,4:", [script_N(q0, B) for B in (1, 4)])
    print("scriptN(Q1,B) B=1,10:", [script_N(q1, B) for B in (1, 10)])
    print("rho*(Q1,n) n=1,2,3,4,8,11,121:", [rho_star(q1, n) for n in (1, 2, 3, 4, 8, 11, 121)])
    print("M(Q0,T=4,n=1,(0,0)):", M_count(q0, 4, 1, 0, 0))
    print("M(Q0,T=4,n=2,(1,1)):", M_count(q0, 4, 2, 1, 1))
    print("M(Q0,T=1,n=3,(0,1)):", M_count(q0, 1, 3, 0, 1))
    print("M*(Q0,T=4,n=1):", M_count(q0, 4, 1, 0, 0, prim=True))
    print("M*(Q0,T=1,n=1):", M_count(q0, 1, 1, 0, 0, prim=True))
    print("N*(Q0) p^k=3,2,4,9:", Nstar(Q0, 3, 1), Nstar(Q0, 2, 1), Nstar(Q0, 2, 2), Nstar(Q0, 3, 2))
    print("N*(Q0,5):", Nstar(Q0, 5, 1), " N*(Q0,25)/625:", Fraction(Nstar(Q0, 5, 2), 625))
    print("N*(Q1) p^k=2,4,8,11:", [Nstar(Q1, 2, k) for k in (1, 2, 3)], Nstar(Q1, 11, 1))
    print("N*(Q1,121):", Nstar(Q1, 11, 2))
    # sigma'_11(Q1) = (1-1/121)(1 + (1/(1+1/11)) * rho*(11)/11), rho*(121)=0
    r11, r121 = rho_star(q1, 11), rho_star(q1, 121)
    sp = (1 - Fraction(1, 121)) * (1 + Fraction(11, 12) * (Fraction(r11, 11) + Fraction(r121, 121)))
    print("sigma'_11(Q1):", sp)
    r2 = [rho_star(q1, 2 ** d) for d in range(1, 5)]
    sp2 = (1 - Fraction(1, 4)) * (1 + Fraction(2, 3) * sum(Fraction(r, 2 ** d) for d, r in enumerate(r2, 1)))
    print("rho*(Q1,2^d) d=1..4:", r2, " sigma'_2(Q1):", sp2)
    for eps in (0.02, 0.005):
        print("sigma_inf(Q0,sup) eps=%g:" % eps, sigma_inf_Q0_sup(eps))


if __name__ == "__main__":
    main()
