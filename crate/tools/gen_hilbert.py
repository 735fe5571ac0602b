"""Hilbert class polynomials H_D by the complex-analytic product over reduced forms.

For each reduced primitive form (a, b, c) of discriminant D, evaluates
j((-b + sqrt(D)) / 2a) at high precision and expands the product; the
coefficients are rounded and checked to be integral to within 1e-30.
Output: "D c0 c1 ... ch" (constant term first).
"""
import math
import mpmath

mpmath.mp.dps = 400

DISCS = [-3, -4, -7, -8, -11, -12, -15, -16, -19, -20, -23, -24, -27, -28,
         -31, -32, -36, -43, -47, -64, -67, -163]


def reduced_forms(d):
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def hilbert(d):
    poly = [mpmath.mpc(1)]
    for (a, b, c) in reduced_forms(d):
        tau = (-b + mpmath.sqrt(mpmath.mpf(d))) / (2 * a)
        j = 1728 * mpmath.kleinj(tau)
        nxt = [mpmath.mpc(0)] * (len(poly) + 1)
        for i, x in enumerate(poly):
            nxt[i + 1] += x
            nxt[i] -= j * x
        poly = nxt
    coeffs = []
    for x in poly:
        r = int(mpmath.nint(x.real))
        assert abs(x.real - r) < mpmath.mpf(10) ** -30, (d, x)
        assert abs(x.imag) < mpmath.mpf(10) ** -30, (d, x)
        coeffs.append(r)
    return coeffs


if __name__ == "__main__":
    for d in DISCS:
        print(d, " ".join(str(c) for c in hilbert(d)))
