"""Compute classical modular polynomials Phi_l(X, Y) from the q-expansion of j.

Solves Phi_l(j(q^l), j(q)) = 0 for the unknown symmetric coefficients with
exact rational Gaussian elimination. Output: one line per coefficient,
"a b value" with a <= b, for Phi_l = sum c_ab X^a Y^b.
"""
import sys
from fractions import Fraction


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def j_coefficients(n_terms):
    """Coefficients c[k] of q*j(q) = sum c[k] q^k for k in [0, n_terms)."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, n_terms)]
    e4_3 = mul(mul(e4, e4, n_terms), e4, n_terms)
    # Delta / q = prod (1 - q^n)^24
    eta = [1] + [0] * (n_terms - 1)
    for n in range(1, n_terms):
        for _ in range(24):
            nxt = eta[:]
            for k in range(n, n_terms):
                nxt[k] -= eta[k - n]
            eta = nxt
    inv = inverse(eta, n_terms)
    return mul(e4_3, inv, n_terms)


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for k, y in enumerate(b[: n - i]):
            out[i + k] += x * y
    return out


def inverse(a, n):
    assert a[0] == 1
    out = [0] * n
    out[0] = 1
    for k in range(1, n):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, k + 1))
    return out


class Laurent:
    def __init__(self, val, coeffs):
        self.val = val
        self.coeffs = coeffs  # coefficient of q^(val + i)

    def mul(self, other, top):
        val = self.val + other.val
        n = top - val + 1
        return Laurent(val, mul(self.coeffs, other.coeffs, max(n, 0)))

    def get(self, e):
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0


def modular_polynomial(l, extra=12):
    top = extra
    bottom = -l * (l + 1)
    # factors are truncated above `work`; products are only read up to `top`
    work = top - bottom + l + 1
    n_terms = work + 2 * l + 10
    jc = j_coefficients(n_terms)
    jq = Laurent(-1, jc)
    # j(q^l): spread coefficients
    spread = [0] * (len(jc) * l)
    for i, c in enumerate(jc):
        spread[i * l] = c
    jql = Laurent(-l, spread)
    one = Laurent(0, [1])
    xp = [one]
    yp = [one]
    for _ in range(l + 1):
        xp.append(xp[-1].mul(jql, work))
        yp.append(yp[-1].mul(jq, work))
    unknowns = [(a, b) for a in range(l + 1) for b in range(a, l + 1) if (a, b) != (l, l)]
    rows = []
    for e in range(bottom, top + 1):
        row = []
        for (a, b) in unknowns:
            v = xp[a].mul(yp[b], top).get(e)
            if a != b:
                v += xp[b].mul(yp[a], top).get(e)
            row.append(Fraction(v))
        rhs = -(xp[l + 1].get(e) + yp[l + 1].get(e) - xp[l].mul(yp[l], top).get(e))
        row.append(Fraction(rhs))
        rows.append(row)
    sol = solve(rows, len(unknowns))
    out = {}
    for (a, b), v in zip(unknowns, sol):
        assert v.denominator == 1, (a, b, v)
        out[(a, b)] = v.numerator
    out[(l, l)] = -1
    out[(0, l + 1)] = 1
    return out


def solve(rows, n):
    rows = [r[:] for r in rows]
    piv_row = 0
    pivots = []
    for col in range(n):
        sel = None
        for r in range(piv_row, len(rows)):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            raise RuntimeError("underdetermined at column %d" % col)
        rows[piv_row], rows[sel] = rows[sel], rows[piv_row]
        pv = rows[piv_row][col]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for r in range(len(rows)):
            if r != piv_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv_row])]
        pivots.append(piv_row)
        piv_row += 1
    for r in range(piv_row, len(rows)):
        assert rows[r][n] == 0, "inconsistent system"
    return [rows[i][n] for i in range(n)]


if __name__ == "__main__":
    l = int(sys.argv[1])
    coeffs = modular_polynomial(l)
    for (a, b) in sorted(coeffs):
        if coeffs[(a, b)] != 0:
            print(a, b, coeffs[(a, b)])
