"""Closed-form evaluators: the product formulas for the overlaps and
boundary emptiness formation probabilities, ASM counting limits, Barnes
G-function machinery, and the large-size asymptotics.

Phases stay exact: e^{i*pi/6} sqrt(3) is the field element 2 + q, so every
product formula lives in Q(q) and can be compared verbatim against the other
exact pipelines.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, lgamma, log, pi

from .exactcore import CycQ, ONE, QQ, TWO_PLUS_Q

MU_KEYS = ("+", "-", "0")


def _mu_key(mu) -> str:
    return {1: "+", -1: "-", 0: "0", "+": "+", "-": "-", "0": "0"}[mu]


def _check_args(N: int, m: int, mu: str):
    if not 0 <= m <= N:
        raise ValueError(f"m={m} out of range for N={N}")
    if N % 2 == 0 and mu != "0":
        raise ValueError("even N pairs with mu=0")
    if N % 2 == 1 and mu == "0":
        raise ValueError("odd N pairs with mu=+/-")


def overlap_product(N: int, m: int, mu) -> CycQ:
    """Exact overlap by the closed product formula."""
    mu = _mu_key(mu)
    _check_args(N, m, mu)
    if N % 2 == 0:
        n = N // 2
        val = QQ(1, 2 ** (m * (m - 1) // 2))
        for k in range(m):
            for j in range(k + 1):
                val = val * QQ((2 * j + k + 2) * (2 * j + n - k),
                               (2 * j + 1) * (2 * j + 2 * n - k))
        for l in range(n):
            val = val * QQ(factorial(3 * l + 1), factorial(n + l))
        return TWO_PLUS_Q ** (n - m) * CycQ(val)
    n = (N - 1) // 2
    val = QQ(1, 3 ** m * 2 ** (m * (m - 1) // 2))
    for k in range(m):
        for j in range(k + 1):
            top = (2 * j + k + 3) * (2 * j + n + 1 - k if mu == "+" else 2 * j + n - k)
            val = val * QQ(top, (2 * j + 1) * (2 * j + 2 * n + 1 - k))
    for l in range(n + 1):
        val = val * QQ(factorial(3 * l), factorial(n + l))
    return CycQ(val)


def even_m0_rational_factor(n: int):
    """The factorial-ratio product of the even-chain m=0 overlap.

    The literal printed m=0 value is e^{i pi n/6} times this rational; the
    product formula (and the direct component sum) carry an extra 3^{n/2}.
    The acceptance suite pins that discrepancy as a regression guard.
    """
    val = QQ(1)
    for l in range(n):
        val = val * QQ(factorial(3 * l + 1), factorial(n + l))
    return val


def befp_product(N: int, m: int, mu) -> CycQ:
    """Exact boundary emptiness formation probability, closed form."""
    mu = _mu_key(mu)
    _check_args(N, m, mu)
    if N % 2 == 0:
        n = N // 2
        val = QQ(1, 2 ** (m * (m - 1) // 2))
        for k in range(m):
            for j in range(k + 1):
                val = val * QQ((2 * j + k + 2) * (2 * j + n - k),
                               (2 * j + 1) * (2 * j + 2 * n - k))
        return TWO_PLUS_Q ** (-m) * CycQ(val)
    n = (N - 1) // 2
    val = QQ(1, 3 ** m * 2 ** (m * (m - 1) // 2))
    for k in range(m):
        for j in range(k + 1):
            top = (2 * j + k + 3) * (2 * j + n + 1 - k if mu == "+" else 2 * j + n - k)
            val = val * QQ(top, (2 * j + 1) * (2 * j + 2 * n + 1 - k))
    return CycQ(val)


def asm_count(kind: str, m: int) -> int:
    """Alternating-sign-matrix style counting sequences."""
    if kind == "A":
        if m < 0:
            raise ValueError("m >= 0 required")
        v = QQ(1)
        for i in range(m):
            v = v * QQ(factorial(3 * i + 1), factorial(m + i))
        return _as_int(v)
    if kind == "A_V":
        if m < 1:
            raise ValueError("m >= 1 required")
        v = QQ(1)
        for i in range(1, m + 1):
            v = v * (3 * i - 1) * QQ(factorial(2 * i - 1) * factorial(6 * i - 3),
                                     factorial(4 * i - 2) * factorial(4 * i - 1))
        return _as_int(v)
    if kind == "N8":
        if m < 1:
            raise ValueError("m >= 1 required")
        v = QQ(1)
        for i in range(1, m):
            v = v * (3 * i + 1) * QQ(factorial(2 * i) * factorial(6 * i),
                                     factorial(4 * i) * factorial(4 * i + 1))
        return _as_int(v)
    raise ValueError("kind must be A, A_V or N8")


def _as_int(v) -> int:
    if v.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {v}")
    return int(v.numerator)


def befp_limit_rational(m: int, mu):
    """Exact N -> infinity limit of befp_product, up to the mu=0 phase.

    Obtained by sending n to infinity term by term in the closed products:
    every (2j + n - shift)/(2j + 2n - shift) factor tends to 1/2.  For mu=0
    the full limit is exp(-i pi m/6) / 3^{m/2} times this rational.
    """
    mu = _mu_key(mu)
    if m < 0:
        raise ValueError("m >= 0 required")
    val = QQ(1, 2 ** (m * m))
    if mu in ("+", "-"):
        val = val / 3 ** m
        for k in range(m):
            for j in range(k + 1):
                val = val * QQ(2 * j + k + 3, 2 * j + 1)
        return val
    for k in range(m):
        for j in range(k + 1):
            val = val * QQ(2 * j + k + 2, 2 * j + 1)
    return val


def befp_limit(m: int, mu):
    """N -> infinity limit of the boundary emptiness formation probability."""
    mu = _mu_key(mu)
    val = befp_limit_rational(m, mu)
    if mu in ("+", "-"):
        return float(val)
    return cmath.exp(-1j * pi * m / 6) * float(val) / 3 ** (m / 2)


def befp_limit_display_literal(m: int, mu):
    """|lim BEFP| as literally printed in the counting display.

    Disagrees with the limit of the product formulas for every m >= 2 (the
    suite records the discrepancy); the printed large-m coefficients match
    the true limit, not this display.
    """
    mu = _mu_key(mu)
    if m < 1:
        raise ValueError("m >= 1 required")
    A = asm_count("A", m)
    if mu in ("+", "-"):
        if m % 2:
            return float(QQ(A, asm_count("A_V", m))
                         / QQ(2 ** ((m * (m + 1)) // 2) * 3 ** ((m - 1) // 2)))
        val = QQ(A, asm_count("N8", m)) / QQ(2 ** (m * m // 2) * 3 ** (m // 2))
        for j in range((m - 2) // 2 + 1):
            val = val * QQ(3 * j + 1, 6 * j + 1)
        return float(val)
    if m % 2:
        val = QQ(A, asm_count("A_V", m)) / QQ(2 ** ((m * m - 1) // 2))
        for j in range((m - 1) // 2 + 1):
            val = val * QQ(3 * j + 1, 6 * j + 1)
        return float(val) / 3 ** (m / 2)
    val = QQ(A, asm_count("N8", m)) / QQ(2 ** (m * (m + 1) // 2))
    for j in range((m - 2) // 2 + 1):
        val = val * QQ((3 * j + 1) * (6 * j + 5), (3 * j + 2) * (6 * j + 1))
    return float(val) / 3 ** (m / 2)


# ---------------------------------------------------------------------------
# Special functions: Glaisher constant, trigamma, Barnes G

def _euler_gamma() -> float:
    N = 60
    h = sum(1.0 / k for k in range(1, N + 1))
    return h - log(N) - 1 / (2 * N) + 1 / (12 * N ** 2) - 1 / (120 * N ** 4) + 1 / (252 * N ** 6)


def _zeta_prime_2() -> float:
    M = 300
    s = sum(log(n) / (n * n) for n in range(2, M))
    lm = log(M)
    tail = (lm + 1) / M + lm / (2 * M * M) - (1 - 2 * lm) / (12 * M ** 3) \
        + (26 - 24 * lm) / (720 * M ** 5)
    return -(s + tail)


@lru_cache(maxsize=1)
def log_glaisher() -> float:
    """log A from zeta'(2) by Euler-Maclaurin; equivalently 1/12 - zeta'(-1)."""
    return (log(2 * pi) + _euler_gamma()) / 12 - _zeta_prime_2() / (2 * pi * pi)


def zeta_prime_minus1() -> float:
    return 1 / 12 - log_glaisher()


def trigamma(z: float) -> float:
    """psi^(1)(z) by upward recurrence into the asymptotic region."""
    if z <= 0:
        raise ValueError("trigamma needs z > 0")
    s = 0.0
    while z < 20:
        s += 1 / (z * z)
        z += 1
    w = 1 / (z * z)
    # 1/z + 1/(2z^2) + sum_k B_{2k} / z^{2k+1}
    tail = 1 / z + w / 2 + (1 / z) * w * (1 / 6 + w * (-1 / 30 + w * (1 / 42 + w * (-1 / 30 + w * (5 / 66)))))
    return s + tail


_BARNES_TAIL = [(-1 / 30, 1), (1 / 42, 2), (-1 / 30, 3), (5 / 66, 4),
                (-691 / 2730, 5), (7 / 6, 6)]


def barnes_log_g(z: float) -> float:
    """log G(z) for z > 0: downward recurrence plus the asymptotic series."""
    if z <= 0:
        raise ValueError("Barnes G implemented for z > 0 only")
    s = 0.0
    while z < 18:
        s -= lgamma(z)
        z += 1.0
    w = z - 1.0
    val = w * w / 4 + w * lgamma(w + 1) - (w * (w + 1) / 2 + 1 / 12) * log(w) - log_glaisher()
    for b, k in _BARNES_TAIL:
        val += b / (2 * k * (2 * k + 1) * (2 * k + 2) * w ** (2 * k))
    return val + s


# ---------------------------------------------------------------------------
# Barnes-G representations of the overlaps

def _logG(*args) -> float:
    return sum(barnes_log_g(a) for a in args)


def log_abs_overlap_barnes(N: int, m: int, mu) -> float:
    """log |C^mu_{N,m}| via the Barnes-G product representations.

    Routes by parity: the even/even case uses the direct representation; the
    five remaining cases use the endpoint formulas of the staged pipelines.
    """
    mu = _mu_key(mu)
    _check_args(N, m, mu)
    if N % 2 == 0:
        n = N // 2
        if m > n:
            raise ValueError("overlap vanishes for m > n; no Barnes form")
        if m % 2 == 0:
            return _log_abs_even_direct(n, m)
        k = (m + 1) // 2
        return _log_abs_even_odd(k, n + 1 - k)
    n = (N - 1) // 2
    if mu == "+":
        if m > n + 1:
            raise ValueError("overlap vanishes for m > n+1; no Barnes form")
        if m % 2:
            k = (m + 1) // 2
            return _log_abs_plus_odd(k, n + 2 - k)
        k = (m + 2) // 2
        return _log_abs_plus_even(k, n + 3 - k)
    if m > n:
        raise ValueError("overlap vanishes for m > n; no Barnes form")
    if m % 2:
        k = (m + 1) // 2
        return _log_abs_minus_odd(k, n + 1 - k)
    k = (m + 2) // 2
    return _log_abs_minus_even(k, n + 2 - k)


def overlap_barnes(N: int, m: int, mu) -> complex:
    """Double-precision overlap from the Barnes-G representations."""
    mu = _mu_key(mu)
    mod = math.exp(log_abs_overlap_barnes(N, m, mu))
    if mu == "0":
        n = N // 2
        return mod * cmath.exp(1j * pi * (n - m) / 6)
    return complex(mod)


def _log_abs_even_direct(n: int, m: int) -> float:
    v = (m * (m + 1) + n * (m - 1)) * log(2) + (n - m) * (3 * n + 3 * m + 1) / 2 * log(3) \
        - (n - m) * log(pi)
    v += _logG(n + m + 1, n + 2 / 3, n + 1, n + 4 / 3) - _logG(2 * n + m + 1)
    v += _logG(n + m / 2 + 0.5, n + m / 2 + 1) - _logG(n - m / 2 + 0.5, n - m / 2 + 1)
    v += _logG(n / 2 - m / 2 + 0.5, n / 2 - m / 2 + 1) - _logG(n / 2 + m / 2 + 0.5, n / 2 + m / 2 + 1)
    v -= _logG(m + 2 / 3, m + 1, m + 4 / 3, m + 1.5)
    v += _logG(1.5 * m + 1, 1.5 * m + 1.5) - _logG(m / 2 + 1, m / 2 + 1.5)
    return v + _logG(1.5)


def log_abs_overlap_barnes_direct(N: int, m: int, mu) -> float:
    """The direct (all-m) Barnes representations, one per groundstate family."""
    mu = _mu_key(mu)
    _check_args(N, m, mu)
    if mu == "0":
        return _log_abs_even_direct(N // 2, m)
    n = (N - 1) // 2
    if mu == "+":
        v = (m * (m + 2) + n * (m - 1)) * log(2) + (n - m) * (3 * n + 3 * m + 4) / 2 * log(3) \
            - (n - m) * log(pi)
        v += _logG(n + m + 2, n + 1, n + 4 / 3, n + 5 / 3) - _logG(2 * n + m + 2)
        v += _logG(n + m / 2 + 1, n + m / 2 + 1.5) - _logG(n - m / 2 + 1, n - m / 2 + 1.5)
        v += _logG((n - m) / 2 + 1, (n - m) / 2 + 1.5) - _logG((n + m) / 2 + 1, (n + m) / 2 + 1.5)
        v -= _logG(m + 1, m + 4 / 3, m + 5 / 3, m + 1.5)
        v += _logG(1.5 * m + 1.5, 1.5 * m + 2) - _logG(m / 2 + 1.5, m / 2 + 2)
        return v + _logG(1.5)
    v = (m * (m + 3) + n * (m - 1)) * log(2) + (n - m) * (3 * n + 3 * m + 4) / 2 * log(3) \
        - (n - m) * log(pi)
    v += _logG(n + m + 1, n + 4 / 3, n + 5 / 3, n + 2) - _logG(2 * n + m + 2)
    v += _logG(n + m / 2 + 1, n + m / 2 + 1.5) - _logG(n - m / 2 + 1, n - m / 2 + 1.5)
    v += _logG((n - m) / 2 + 0.5, (n - m) / 2 + 1) - _logG((n + m) / 2 + 0.5, (n + m) / 2 + 1)
    v -= _logG(m + 1, m + 4 / 3, m + 5 / 3, m + 1.5)
    v += _logG(1.5 * m + 1.5, 1.5 * m + 2) - _logG(m / 2 + 1.5, m / 2 + 2)
    return v + _logG(1.5)


def _log_abs_even_odd(k: int, p: int) -> float:
    """C^0_{2(p+k-1), 2k-1} endpoint."""
    v = (3 * p * p - 5 * p + 9 * k * k - 10 * k + 6 * p * k + 3) / 2 * log(3) \
        - (k + 1) * log(pi) \
        - (2 * p * p - 3 * p + 6 * k * k - 22 * k / 3 + 2 * p * k + 11 / 3) * log(2)
    v += _logG(p + k - 1 / 3, p + k, p + k + 1 / 3, p - k + 1) \
        - _logG(p + 2 * k - 0.5, p + 2 * k, p, p + 0.5)
    v += _logG((p + 3 * k) / 2, (p + 3 * k + 1) / 2) - _logG((p - k + 2) / 2, (p - k + 3) / 2)
    v += _logG(2 * k - 2 / 3) - _logG(2 * k + 0.5)
    v += _logG(k + 5 / 6, k + 4 / 3) - _logG(k - 1 / 3, k + 1 / 6)
    v += _logG(7 / 6) + 3 * barnes_log_g(1.5) - _logG(1 / 3, 5 / 6) - 2 * barnes_log_g(4 / 3)
    return v


def _log_abs_minus_odd(k: int, p: int) -> float:
    """C^-_{2(p+k-1)+1, 2k-1} endpoint."""
    v = (3 * p * p - 2 * p + 9 * k * k - 7 * k + 6 * p * k + 1) / 2 * log(3) \
        - (k - 0.5) * log(pi) \
        - (2 * p * p - p + 6 * k * k - 10 * k / 3 + 2 * p * k - 1 / 3) * log(2)
    v += _logG(p + k + 1 / 3, p + k + 2 / 3, p + k + 1, p - k + 1) \
        - _logG(p + 2 * k, p + 2 * k + 0.5, p + 0.5, p + 1)
    v += _logG((p + 3 * k) / 2, (p + 3 * k + 1) / 2) - _logG((p - k + 2) / 2, (p - k + 3) / 2)
    v += _logG(2 * k + 1 / 3) - _logG(2 * k + 0.5)
    v += _logG(k + 1 / 3, k + 5 / 6) - _logG(k + 1 / 6, k + 2 / 3)
    v += _logG(1 / 6) + 3 * barnes_log_g(1.5) - _logG(1 / 3, 11 / 6) - 2 * barnes_log_g(4 / 3)
    return v


def _log_abs_minus_even(k: int, p: int) -> float:
    """C^-_{2(p+k-2)+1, 2k-2} endpoint."""
    v = (3 * p * p - 8 * p + 9 * k * k - 19 * k + 6 * p * k + 10) / 2 * log(3) \
        - k * log(pi) \
        - (2 * p * p - 4 * p + 6 * k * k - 31 * k / 3 + 2 * p * k + 16 / 3) * log(2)
    v += _logG(p + k - 2 / 3, p + k - 1 / 3, p + k, p - k + 1) \
        - _logG(p + 2 * k - 1.5, p + 2 * k - 1, p, p + 0.5)
    v += _logG((p + 3 * k - 2) / 2, (p + 3 * k - 1) / 2) - _logG((p - k + 2) / 2, (p - k + 3) / 2)
    v += _logG(2 * k - 2 / 3) - _logG(2 * k - 0.5)
    v += _logG(k - 1 / 6, k + 1 / 3) - _logG(k - 1 / 3, k + 1 / 6)
    v += _logG(7 / 6) + 3 * barnes_log_g(1.5) - _logG(1 / 3, 5 / 6) - 2 * barnes_log_g(4 / 3)
    return v


def _log_abs_plus_odd(k: int, p: int) -> float:
    """C^+_{2(p+k-2)+1, 2k-1} endpoint."""
    v = (3 * p * p - 8 * p + 9 * k * k - 13 * k + 6 * p * k + 5) / 2 * log(3) \
        - (k - 1.5) * log(pi) \
        - (2 * p * p - 5 * p + 6 * k * k - 22 * k / 3 + 2 * p * k + 8 / 3) * log(2)
    v += _logG(p + k - 1, p + k - 2 / 3, p + k - 1 / 3, p - k + 1) \
        - _logG(p + 2 * k - 1, p + 2 * k - 0.5, p - 0.5, p)
    v += _logG((p + 3 * k) / 2, (p + 3 * k + 1) / 2) - _logG((p - k + 2) / 2, (p - k + 3) / 2)
    v += _logG(2 * k + 1 / 3) - _logG(2 * k + 0.5)
    v += _logG(k + 1 / 3, k + 5 / 6) - _logG(k + 1 / 6, k + 2 / 3)
    v += _logG(1 / 6, 2 / 3) + 3 * barnes_log_g(1.5) \
        - _logG(11 / 6, 5 / 3) - 3 * barnes_log_g(4 / 3)
    return v


def _log_abs_plus_even(k: int, p: int) -> float:
    """C^+_{2(p+k-3)+1, 2k-2} endpoint."""
    v = (3 * p * p - 14 * p + 9 * k * k - 25 * k + 6 * p * k + 20) / 2 * log(3) \
        - (k - 1) * log(pi) \
        - (2 * p * p - 8 * p + 6 * k * k - 43 * k / 3 + 2 * p * k + 37 / 3) * log(2)
    v += _logG(p + k - 2, p + k - 5 / 3, p + k - 4 / 3, p - k + 1) \
        - _logG(p + 2 * k - 2.5, p + 2 * k - 2, p - 1, p - 0.5)
    v += _logG((p + 3 * k - 2) / 2, (p + 3 * k - 1) / 2) - _logG((p - k + 2) / 2, (p - k + 3) / 2)
    v += _logG(2 * k - 2 / 3) - _logG(2 * k - 0.5)
    v += _logG(k - 1 / 6, k + 1 / 3) - _logG(k - 1 / 3, k + 1 / 6)
    v += _logG(2 / 3, 7 / 6) + 3 * barnes_log_g(1.5) \
        - _logG(5 / 6, 5 / 3) - 3 * barnes_log_g(4 / 3)
    return v


def log_abs_even_sixvertex_pipeline(k: int, p: int) -> float:
    """|C^0_{2(p+k),2k}| as produced by the finite-difference pipeline's
    Barnes-G rewriting (the J-ratio numerator)."""
    v = (3 * p * p + p + 9 * k * k + 2 * k + 6 * p * k) / 2 * log(3) \
        - (k + 0.5) * log(pi) \
        - (2 * p * p + 6 * k * k - k / 3 + 2 * p * k) * log(2)
    v += _logG(p + k + 2 / 3, p + k + 1, p + k + 4 / 3, p - k + 1) \
        - _logG(p + 2 * k + 1, p + 2 * k + 1.5, p + 0.5, p + 1)
    v += _logG((p + 3 * k + 2) / 2, (p + 3 * k + 3) / 2) - _logG((p - k + 2) / 2, (p - k + 3) / 2)
    v += _logG(2 * k + 1 / 3) - _logG(2 * k + 1.5)
    v += _logG(k + 4 / 3, k + 11 / 6) - _logG(k + 1 / 6, k + 2 / 3)
    v += _logG(1 / 6) + 3 * barnes_log_g(1.5) - _logG(1 / 3, 11 / 6) - 2 * barnes_log_g(4 / 3)
    return v


def j_ratio(k: int, p: int) -> float:
    """Consistency ratio of the two even/even Barnes forms; should be 1."""
    return math.exp(log_abs_even_sixvertex_pipeline(k, p) - _log_abs_even_direct(p + k, 2 * k))


# ---------------------------------------------------------------------------
# Asymptotics

TAU1 = {"+": 1, "-": 1, "0": -1}
TAU2 = {"+": 1, "-": -1, "0": -1}
F_LOG = -1 / 24
G_LOG = {"+": -5 / 72, "-": -5 / 72, "0": 7 / 72}


def f_minus2(x: float) -> float:
    return 0.25 * (6 * log(3) + x * x * (3 * log(3) - 4 * log(2))
                   + (1 - x) ** 2 * log(1 - x) - (2 - x) ** 2 * log(2 - x)
                   + (1 + x) ** 2 * log(1 + x) - (2 + x) ** 2 * log(2 + x))


def f_minus1(x: float, mu) -> float:
    t1, t2 = TAU1[_mu_key(mu)], TAU2[_mu_key(mu)]
    return 0.25 * ((3 * t1 + 5) * log(3) + x * (log(3) - 2 * log(2))
                   + t2 * (1 - x) * log(1 - x) - t1 * (2 - x) * log(2 - x)
                   + (t2 + 2) * (1 + x) * log(1 + x) - (t1 + 2) * (2 + x) * log(2 + x))


def f_zero(x: float, mu) -> float:
    t1, t2 = TAU1[_mu_key(mu)], TAU2[_mu_key(mu)]
    return (3 + (18 * t1 + 15) * log(3) - 15 * log(2) - 36 * log_glaisher()
            - 3 * log(1 - x) + 3 * log(2 - x) + (1 - 6 * t1) * log(x)
            + (18 * t2 + 15) * log(1 + x) - (18 * t1 + 15) * log(2 + x)) / 72


def g_minus2() -> float:
    return 0.75 * (log(3) - 2 * log(2))


def g_minus1() -> float:
    return 0.25 * log(3) - log(2)


def g_zero(mu) -> float:
    mu = _mu_key(mu)
    common = 11 / 72 * log(3) + 1 / 72 - log_glaisher() / 6
    if mu in ("+", "-"):
        return common - log(2) / 24 + log(pi) / 6 - math.lgamma(1 / 3) / 3
    return common - 13 / 24 * log(2) - log(pi) / 6 + 2 * math.lgamma(1 / 3) / 3


def scaling_expansion(n: int, x: float, mu) -> float:
    """Predicted log|C| from the printed scaling coefficients."""
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    return n * n * f_minus2(x) + n * f_minus1(x, mu) + F_LOG * log(n) + f_zero(x, mu)


def large_m_expansion(m: int, mu) -> float:
    """Predicted log|BEFP_infinity(m)| from the printed large-m coefficients."""
    return m * m * g_minus2() + m * g_minus1() + G_LOG[_mu_key(mu)] * log(m) + g_zero(mu)


def log_abs_befp_limit(m: int, mu) -> float:
    """log |lim_N BEFP| by lgamma sums; safe for large m.

    Uses prod_{j=0}^{k} (a + 2j) = 2^{k+1} Gamma(a/2 + k + 1) / Gamma(a/2)
    to collapse each inner product to O(1) lgamma calls.
    """
    mu = _mu_key(mu)
    a0 = 3 if mu in ("+", "-") else 2        # inner factors (2j + k + a0)
    v = -m * m * log(2)
    v -= m * log(3) if mu in ("+", "-") else (m / 2) * log(3)
    lg_half = lgamma(0.5)
    for k in range(m):
        a = k + a0
        v += lgamma(a / 2 + k + 1) - lgamma(a / 2)        # prod (a + 2j), j<=k
        v -= lgamma(k + 1.5) - lg_half                    # prod (1 + 2j), j<=k
    return v


def fit_scaling_coeffs(mu, x: float, n_min: int = 504, n_max: int = 2000,
                       step: int = 8):
    """Least-squares recovery of (f_-2, f_-1, f_log, f_0) from log|C|.

    A 1/n nuisance regressor absorbs the first subleading correction, which
    otherwise biases the constant term at the 1e-3 level over this n-range.
    """
    import numpy as np

    mu = _mu_key(mu)
    rows, ys = [], []
    for n in range(n_min, n_max + 1, step):
        if (n * x) != int(n * x):
            continue
        m = int(n * x)
        N = 2 * n if mu == "0" else 2 * n + 1
        ys.append(log_abs_overlap_barnes(N, m, mu))
        rows.append([n * n, n, log(n), 1.0, 1.0 / n])
    coef, *_ = np.linalg.lstsq(np.array(rows), np.array(ys), rcond=None)
    return {
        "f_minus2": coef[0], "f_minus1": coef[1], "f_log": coef[2], "f_zero": coef[3],
        "targets": (f_minus2(x), f_minus1(x, mu), F_LOG, f_zero(x, mu)),
    }


def fit_large_m_coeffs(mu, m_min: int = 500, m_max: int = 2000, step: int = 25):
    """Least-squares recovery of (g_-2, g_-1, g_log, g_0) from log|BEFP_inf|."""
    import numpy as np

    mu = _mu_key(mu)
    rows, ys = [], []
    for m in range(m_min, m_max + 1, step):
        ys.append(log_abs_befp_limit(m, mu))
        rows.append([m * m, m, log(m), 1.0, 1.0 / m])
    coef, *_ = np.linalg.lstsq(np.array(rows), np.array(ys), rcond=None)
    return {
        "g_minus2": coef[0], "g_minus1": coef[1], "g_log": coef[2], "g_zero": coef[3],
        "targets": (g_minus2(), g_minus1(), G_LOG[mu], g_zero(mu)),
    }


# ---------------------------------------------------------------------------
# Cross-verification record

@dataclass
class OverlapReport:
    N: int
    m: int
    mu: str
    method: str
    approx: complex
    exact: CycQ | None = None
    elapsed: float = 0.0

    def exact_str(self) -> str | None:
        return str(self.exact) if self.exact is not None else None
