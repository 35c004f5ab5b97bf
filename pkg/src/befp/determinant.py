"""Determinant machinery: the candidate formula for the even scalar product,
orthogonal/symplectic Schur factors, fraction-free determinants over Q(q),
Schur evaluations, and the finite-difference homogeneous-limit pipeline.

Everything is exact: CycQ entries go through Bareiss elimination on a
row-scaled integer form of Q(q); purely rational work uses QQ directly.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import factorial

from .exactcore import CycQ, ONE, Q, QI, QQ, ZERO, q_pow


class NonGenericPoint(ValueError):
    """A Cauchy-type denominator C(...) vanished; the caller must resample."""


def _den_lcm(r) -> int:
    return int(r.denominator)


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a // gcd(a, b) * b


def _int_cycq_divide(num: CycQ, den: CycQ) -> CycQ:
    """Exact division in Z[q]; raises if not divisible (Bareiss guarantee)."""
    n = den.norm()
    t = num * den.conj()
    qa, ra = divmod(int(t.a), int(n))
    qb, rb = divmod(int(t.b), int(n))
    if ra or rb:
        raise ArithmeticError("non-exact division in Bareiss elimination")
    return CycQ(qa, qb)


def det_bareiss(matrix) -> CycQ:
    """Fraction-free determinant of a CycQ matrix.

    Rows are scaled to Z[q] first (tracking the overall rational factor);
    the Bareiss recurrence then divides exactly at every step, so no
    intermediate fractions appear.
    """
    n = len(matrix)
    if n == 0:
        return ONE
    M = []
    scale = QQ(1)
    for row in matrix:
        lcm = 1
        for c in row:
            lcm = _lcm(lcm, _den_lcm(c.a))
            lcm = _lcm(lcm, _den_lcm(c.b))
        scale = scale * lcm
        M.append([CycQ(int(c.a * lcm), int(c.b * lcm)) for c in row])
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = _int_cycq_divide(num, prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return CycQ(det.a / scale, det.b / scale) * sign


def det_laplace(matrix) -> CycQ:
    """Cofactor-expansion determinant; independent small-size oracle."""
    n = len(matrix)
    if n == 0:
        return ONE
    if n == 1:
        return matrix[0][0]
    acc = ZERO
    for j in range(n):
        if matrix[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * det_laplace(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def cauchy_factor(ys) -> CycQ:
    """C(y_1..y_n) = prod_{i<j} (y_j - y_i)(y_i y_j - 1)."""
    v = ONE
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            v = v * (ys[j] - ys[i]) * (ys[i] * ys[j] - ONE)
    return v


def _eta(x: CycQ, j: int, pk: int, sign: int) -> CycQ:
    num = x ** (3 * (j - 1)) + CycQ(sign) * x ** (3 * (pk - j) + 1)
    den = ONE + CycQ(sign) * x
    if den.is_zero():
        raise NonGenericPoint("eta evaluated at x = -sign")
    return num * den.inv()


def det_matrix(k: int, p: int, zs, xs):
    """The 2(p+k) block matrix of the determinant formula."""
    pk = p + k
    M = [[ZERO] * (2 * pk) for _ in range(2 * pk)]
    for i in range(1, p + 1):
        for j in range(1, pk + 1):
            M[i - 1][j - 1] = _eta(xs[i - 1], j, pk, +1)
    for i in range(p + 1, 2 * p + 1):
        for j in range(pk + 1, 2 * pk + 1):
            M[i - 1][j - 1] = _eta(xs[i - p - 1], j - pk, pk, -1)
    for i in range(2 * p + 1, 2 * pk + 1):
        z = zs[i - 2 * p - 1]
        for j in range(1, pk + 1):
            M[i - 1][j - 1] = _eta(z, j, pk, +1)
        for j in range(pk + 1, 2 * pk + 1):
            M[i - 1][j - 1] = _eta(z, j - pk, pk, -1)
    return M


def R_kp(k: int, p: int, zs, xs) -> CycQ:
    """Determinant representation of the even scalar product, exact."""
    zs = [x if isinstance(x, CycQ) else CycQ(x) for x in zs]
    xs = [x if isinstance(x, CycQ) else CycQ(x) for x in xs]
    if len(zs) != 2 * k or len(xs) != p:
        raise ValueError("arity mismatch")
    for y in list(zs) + list(xs):
        if y.is_zero() or y == ONE or y == -ONE:
            raise NonGenericPoint("parameters must avoid 0 and +-1")
    den = cauchy_factor(xs) * cauchy_factor(list(zs) + list(xs))
    if den.is_zero():
        raise NonGenericPoint("Cauchy denominator vanishes")
    pk = p + k
    pref = CycQ((-1) ** (p * (p - 1) // 2)) * (ONE - Q * Q) ** (p + 2 * k)
    pref = pref * CycQ(QQ(1, 2 ** k * 3 ** (pk * (pk + 1) // 2)))
    for x in xs:
        pref = pref * (ONE - Q * x) * (ONE - QI * x) * (x.inv() ** pk)
    for z in zs:
        pref = pref * (ONE + z)
    for i in range(2 * k):
        for j in range(i + 1, 2 * k):
            pref = pref * (Q * zs[i] - QI * zs[j])
    return pref * det_bareiss(det_matrix(k, p, zs, xs)) * den.inv()


def P_pm(sign: int, ys) -> CycQ:
    """Specialised even-orthogonal (+) / symplectic (-) Schur factor."""
    ys = [y if isinstance(y, CycQ) else CycQ(y) for y in ys]
    n = len(ys)
    if n == 0:
        return ONE
    C = cauchy_factor(ys)
    if C.is_zero():
        raise NonGenericPoint("coincident or inverse-paired arguments")
    M = [[y ** (3 * (j - 1)) + CycQ(sign) * y ** (3 * (n - j) + 1) for j in range(1, n + 1)]
         for y in ys]
    return det_bareiss(M) * C.inv()


def cofactor_expansion(k: int, p: int, zs, xs) -> CycQ:
    """det M / (C C) as the signed sum over k-subsets of P+ P- products."""
    zs = [x if isinstance(x, CycQ) else CycQ(x) for x in zs]
    xs = [x if isinstance(x, CycQ) else CycQ(x) for x in xs]
    total = ZERO
    for J in combinations(range(2 * k), k):
        Jc = [j for j in range(2 * k) if j not in J]
        num = P_pm(+1, list(xs) + [zs[j] for j in J]) * P_pm(-1, list(xs) + [zs[j] for j in Jc])
        den = ONE
        for i in J:
            for j in Jc:
                den = den * (zs[j] - zs[i]) * (zs[i] * zs[j] - ONE)
        for j in J:
            den = den * (ONE + zs[j])
        for j in Jc:
            den = den * (ONE - zs[j])
        total = total + num * den.inv()
    pref = CycQ((-1) ** (p * k))
    for x in xs:
        pref = pref * (ONE - x * x).inv()
    return pref * total


# ---------------------------------------------------------------------------
# Schur polynomials

def schur_bialternant(lam, xs):
    """Exact bialternant ratio; xs pairwise distinct rationals."""
    xs = [QQ(x) for x in xs]
    ell = len(xs)
    lam = list(lam) + [0] * (ell - len(lam))
    if len(lam) > ell:
        raise ValueError("partition longer than the variable list")
    if len(set(xs)) != ell:
        raise ValueError("arguments must be pairwise distinct")
    num = [[CycQ(x ** (lam[i] + ell - 1 - i)) for x in xs] for i in range(ell)]
    den = QQ(1)
    for i in range(ell):
        for j in range(i + 1, ell):
            den = den * (xs[i] - xs[j])
    d = det_bareiss(num)
    return d.rational() / den


def schur_tableau_sum(lam, xs):
    """Monomial-by-monomial Schur sum over semistandard tableaux (oracle)."""
    xs = [QQ(x) for x in xs]
    lam = [l for l in lam if l > 0]
    ell = len(xs)
    if not lam:
        return QQ(1)

    rows = len(lam)
    total = [QQ(0)]

    def fill(r, c, prev_row, cur_row, acc):
        if r == rows:
            total[0] += acc
            return
        if c == lam[r]:
            fill(r + 1, 0, cur_row, [], acc)
            return
        lo = cur_row[c - 1] if c else 1
        if prev_row is not None and c < len(prev_row):
            lo = max(lo, prev_row[c] + 1)
        for v in range(lo, ell + 1):
            cur_row.append(v)
            fill(r, c + 1, prev_row, cur_row, acc * xs[v - 1])
            cur_row.pop()

    fill(0, 0, None, [], QQ(1))
    return total[0]


def staircase_partition(a: int, b: int) -> tuple:
    return tuple(range(a, 0, -1)) + (0,) * b


def schur_staircase_eval(a: int, b: int, alpha, beta):
    """Closed product form of the staircase Schur at x_i = alpha + beta*i."""
    alpha, beta = QQ(alpha), QQ(beta)
    x = lambda i: alpha + beta * i
    v = QQ(1, 2 ** a) if a else QQ(1)
    for i in range(1, a + 1):
        for j in range(i + b, a + b + 1):
            v = v * (x(i) + x(j))
    for k in range(1, a + 1):
        for l in range(1, b + 1):
            v = v * QQ(2 * k + l - 1, k + l - 1)
    return v


# ---------------------------------------------------------------------------
# Chebyshev Taylor data and the finite-difference pipeline

def chebyshev_taylor_at_2(kind: str, ell: int, m: int):
    """(1/m!) d^m/dbeta^m of U_{ell-1}(beta/2) resp. T_ell(beta/2) at beta = 2."""
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    if kind == "U":
        num = QQ(1)
        for t in range(-m, m + 1):
            num = num * (ell - t)
        return num / factorial(2 * m + 1)
    if kind == "T":
        num = QQ(1)
        for t in range(m):
            num = num * (ell * ell - t * t)
        return num / factorial(2 * m)
    raise ValueError("kind must be 'U' or 'T'")


def chebyshev_value(kind: str, n: int, x):
    """Direct three-term recurrence, for cross-checking the Taylor data."""
    x = QQ(x)
    if kind == "U" and n < 0:
        return -chebyshev_value("U", -n - 2, x) if n != -1 else QQ(0)
    if kind == "T" and n < 0:
        n = -n
    prev, cur = QQ(1), (x if kind == "T" else 2 * x)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def u_spec(j: int, p: int, k: int) -> int:
    return 3 * (p + k - 2 * j) + 5


def v_spec(p: int, k: int) -> list:
    pk = p + k
    return [-u_spec(j, p, k) + 2 for j in range(1, pk + 1)] \
        + [u_spec(j, p, k) for j in range(1, pk + 1)]


def gamma0_staged(k: int, p: int):
    """Finite-difference limit determinant, entries from Chebyshev Taylor rows."""
    if k > p:
        return QQ(0)
    pk = p + k
    size = 2 * pk
    M = [[ZERO] * size for _ in range(size)]
    for i in range(1, size + 1):
        m = i - 1 if i <= p else i - p - 1
        for j in range(1, size + 1):
            if j <= pk:
                ell = -u_spec(j, p, k) if i <= p else -u_spec(j, p, k) + 2
            else:
                ell = u_spec(j - pk, p, k) - 2 if i <= p else u_spec(j - pk, p, k)
            M[i - 1][j - 1] = CycQ(chebyshev_taylor_at_2("U", ell, m))
    pref = QQ((-1) ** p, 2 ** (2 * p + k)) / QQ(2) ** (p * (p - 1) + (p + 2 * k) * (p + 2 * k - 1))
    return pref * det_bareiss(M).rational()


def gamma0_final(k: int, p: int):
    """Closed form: monomial determinant as staircase Schur times Vandermonde."""
    if k > p:
        return QQ(0)
    pk = p + k
    vs = v_spec(p, k)
    vandermonde = QQ(1)
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            vandermonde = vandermonde * (vs[j] - vs[i])
    s = schur_staircase_eval(2 * k, p - k, 3 * p + 3 * k + 5, -6)
    det_m7 = QQ((-1) ** (p * (p - 1) // 2)) * s * vandermonde
    pref = QQ(1, 2 ** (2 * p + k))
    num = 1
    for i in range(1, p + 1):
        num *= 4 * i - 2
    pref = pref * QQ(num) / QQ(2) ** (p * (p - 1) + (p + 2 * k) * (p + 2 * k - 1))
    for i in range(1, p + 1):
        pref = pref / factorial(2 * i - 1)
    for i in range(1, p + 2 * k + 1):
        pref = pref / factorial(2 * i - 1)
    return pref * det_m7


def gamma0_kp(k: int, p: int, stage: str = "final"):
    """The homogeneous-limit determinant factor, by either pipeline anchor."""
    if stage == "staged_M4_finite_diff":
        return gamma0_staged(k, p)
    if stage == "final_M7":
        return gamma0_final(k, p)
    raise ValueError("stage must be 'staged_M4_finite_diff' or 'final_M7'")


def overlap_even_determinant(k: int, p: int, stage: str = "final_M7") -> CycQ:
    """C^0_{2(p+k), 2k} through the determinant pipeline, exact in Q(q)."""
    g = gamma0_kp(k, p, stage)
    pref = CycQ((-1) ** (p * (p + 1) // 2) * QQ(2 ** k)) * (Q * Q - ONE) ** (p - k)
    denom_exp = (p * (p - 1) - k * (k + 1)) // 2 + k * p
    pref = pref * CycQ(QQ(1, 3 ** denom_exp))
    return pref * CycQ(g)


def det_m7_direct(k: int, p: int):
    """det of the monomial matrix, computed directly (pipeline cross-check)."""
    vs = v_spec(p, k)
    size = 2 * (p + k)
    M = [[CycQ(QQ(vs[j]) ** (2 * i if i < p else 2 * (i - p) + 1)) for j in range(size)]
         for i in range(size)]
    return det_bareiss(M).rational()
