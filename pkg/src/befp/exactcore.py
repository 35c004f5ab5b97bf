"""Exact arithmetic: rationals, the cyclotomic field Q(q) with q^2+q+1 = 0,
and sparse multivariate Laurent polynomials over it.

Everything at the combinatorial point Delta = -1/2 lives in Q(q) for
q = exp(2*pi*i/3).  Elements are stored as a + b*q in the basis {1, q},
with q^2 rewritten as -1-q on the fly, so representations are unique and
equality is literal.
"""

from __future__ import annotations

import math
from typing import NamedTuple

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as QQ

_SQRT3_2 = math.sqrt(3.0) / 2.0


def rational_str(r) -> str:
    """Lowest-terms "p/q" form, denominator always written."""
    return f"{r.numerator}/{r.denominator}"


def parse_rational(s: str):
    num, _, den = s.partition("/")
    return QQ(int(num), int(den)) if den else QQ(int(num))


class CycQ:
    """Element a + b*q of Q(q), q = exp(2*pi*i/3)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if type(a) is type(_QZERO) else QQ(a)
        self.b = b if type(b) is type(_QZERO) else QQ(b)

    # -- ring structure ------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return CycQ(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return CycQ(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return CycQ(-self.a, -self.b)

    def __mul__(self, other):
        other = _coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return CycQ(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _coerce(other).inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- field structure -----------------------------------------------
    def conj(self) -> "CycQ":
        """Galois conjugate q -> q^2 = -1-q."""
        return CycQ(self.a - self.b, -self.b)

    def norm(self):
        """Multiplicative norm a^2 - a*b + b^2, a rational."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inv(self) -> "CycQ":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(q)")
        c = self.conj()
        return CycQ(c.a / n, c.b / n)

    # -- predicates and conversions --------------------------------------
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self):
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def to_complex(self) -> complex:
        return complex(float(self.a) - 0.5 * float(self.b), _SQRT3_2 * float(self.b))

    def __eq__(self, other):
        if isinstance(other, CycQ):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, type(_QZERO))):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"CycQ({self.a}, {self.b})"

    def __str__(self):
        return f"{rational_str(self.a)} {rational_str(self.b)}"

    @staticmethod
    def parse(s: str) -> "CycQ":
        pa, pb = s.split()
        return CycQ(parse_rational(pa), parse_rational(pb))


_QZERO = QQ(0)


def _coerce(x) -> CycQ:
    if isinstance(x, CycQ):
        return x
    return CycQ(x)


ZERO = CycQ(0, 0)
ONE = CycQ(1, 0)
Q = CycQ(0, 1)                 # the generator q
QI = CycQ(-1, -1)              # q^{-1} = q^2
ZETA = CycQ(1, 1)              # principal square root of q: exp(i*pi/3) = 1 + q
Q_MINUS_QI = Q - QI            # q - q^{-1} = 1 + 2q  (equals i*sqrt(3))
TWO_PLUS_Q = CycQ(2, 1)        # exp(i*pi/6) * sqrt(3)

_QPOW = (ONE, Q, QI)
_ZPOW = (ONE, ZETA, Q, -ONE, -ZETA, -Q)


def q_pow(k: int) -> CycQ:
    """q^k using q^3 = 1."""
    return _QPOW[k % 3]


def zeta_pow(k: int) -> CycQ:
    """(q^{1/2})^k with q^{1/2} = exp(i*pi/3) = 1 + q; period 6."""
    return _ZPOW[k % 6]


class VarId(NamedTuple):
    """Variable name: kind 0 = z_i, 1 = x_i, 2 = the lone barred parameter."""

    kind: int
    index: int

    def __str__(self):
        if self.kind == KIND_Z:
            return f"z{self.index}"
        if self.kind == KIND_X:
            return f"x{self.index}"
        return "x"


KIND_Z, KIND_X, KIND_AUX = 0, 1, 2


def zvar(i: int) -> VarId:
    return VarId(KIND_Z, i)


def xvar(i: int) -> VarId:
    return VarId(KIND_X, i)


def zvars(n: int) -> tuple:
    return tuple(VarId(KIND_Z, i) for i in range(1, n + 1))


class NonExactDivision(ArithmeticError):
    """Raised when a polynomial division leaves a remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class PoleError(ZeroDivisionError):
    """Zero substituted into a negative power."""


class MultiLaurent:
    """Sparse Laurent polynomial over CycQ in a fixed ordered variable tuple.

    Terms map exponent tuples (ints, negatives allowed) to nonzero CycQ
    coefficients.  The variable tuple is ordered by VarId.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: dict | None = None):
        self.vars = tuple(vars)
        self.terms = terms if terms is not None else {}

    # -- constructors ----------------------------------------------------
    @staticmethod
    def const(c, vars: tuple = ()) -> "MultiLaurent":
        c = _coerce(c)
        if c.is_zero():
            return MultiLaurent(vars)
        return MultiLaurent(vars, {(0,) * len(vars): c})

    @staticmethod
    def var(v: VarId, power: int = 1, coeff=1) -> "MultiLaurent":
        c = _coerce(coeff)
        if c.is_zero():
            return MultiLaurent((v,))
        return MultiLaurent((v,), {(power,): c})

    # -- bookkeeping -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> "MultiLaurent":
        return MultiLaurent(self.vars, dict(self.terms))

    def _aligned(self, other: "MultiLaurent"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        allv = tuple(sorted(set(self.vars) | set(other.vars)))
        return allv, _remap(self, allv), _remap(other, allv)

    def constant_value(self) -> CycQ:
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            (exps, c), = self.terms.items()
            if all(e == 0 for e in exps):
                return c
        raise ValueError("polynomial is not constant")

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiLaurent):
            other = MultiLaurent.const(other, self.vars)
        vars, t1, t2 = self._aligned(other)
        out = dict(t1)
        for e, c in t2.items():
            acc = out.get(e)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MultiLaurent(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiLaurent):
            other = MultiLaurent.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiLaurent):
            return self.scale(other)
        vars, t1, t2 = self._aligned(other)
        if len(t1) > len(t2):
            t1, t2 = t2, t1
        out: dict = {}
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                s = c if acc is None else acc + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiLaurent(vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiLaurent":
        c = _coerce(c)
        if c.is_zero():
            return MultiLaurent(self.vars)
        return MultiLaurent(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiLaurent.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiLaurent):
            try:
                return self.constant_value() == _coerce(other)
            except ValueError:
                return False
        return (self - other).is_zero()

    __hash__ = None

    # -- degrees ----------------------------------------------------------
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, v: VarId):
        i = self.vars.index(v)
        return max((e[i] for e in self.terms), default=0)

    def min_degree_in(self, v: VarId):
        i = self.vars.index(v)
        return min((e[i] for e in self.terms), default=0)

    # -- substitution ----------------------------------------------------
    def eval(self, assignment: dict) -> CycQ:
        """Exact full substitution VarId -> CycQ."""
        missing = [v for v in self.vars if v not in assignment]
        if missing and any(any(e[self.vars.index(v)] != 0 for e in self.terms) for v in missing):
            raise KeyError(f"unassigned variable {missing[0]}")
        powers = []
        for i, v in enumerate(self.vars):
            exps = {e[i] for e in self.terms}
            val = _coerce(assignment.get(v, ZERO))
            tab = {}
            for k in exps:
                if k < 0 and val.is_zero():
                    raise PoleError(f"zero substituted into negative power of {v}")
                tab[k] = ONE if k == 0 else val ** k
            powers.append(tab)
        acc = ZERO
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * powers[i][k]
            acc = acc + t
        return acc

    def subs_value(self, v: VarId, value) -> "MultiLaurent":
        """Substitute one variable by a CycQ value; drops the variable."""
        value = _coerce(value)
        i = self.vars.index(v)
        newvars = self.vars[:i] + self.vars[i + 1:]
        cache: dict = {0: ONE}

        def p(k):
            if k not in cache:
                if k < 0 and value.is_zero():
                    raise PoleError(f"zero substituted into negative power of {v}")
                cache[k] = value ** k
            return cache[k]

        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k and value.is_zero():
                if k < 0:
                    raise PoleError(f"zero substituted into negative power of {v}")
                continue
            ne = e[:i] + e[i + 1:]
            t = c * p(k) if k else c
            acc = out.get(ne)
            s = t if acc is None else acc + t
            if s.is_zero():
                out.pop(ne, None)
            else:
                out[ne] = s
        return MultiLaurent(newvars, out)

    def subs_scaled(self, v: VarId, coeff, target: VarId) -> "MultiLaurent":
        """Substitute v -> coeff * target (target may already occur)."""
        coeff = _coerce(coeff)
        i = self.vars.index(v)
        if target in self.vars and target != v:
            j0 = self.vars.index(target)
        else:
            j0 = None
        newvars = self.vars[:i] + self.vars[i + 1:]
        if j0 is None and target not in newvars:
            newvars = tuple(sorted(newvars + (target,)))
        jt = newvars.index(target)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = list(e[:i] + e[i + 1:])
            while len(ne) < len(newvars):
                ne.insert(jt, 0)
            ne[jt] += k
            t = c * coeff ** k if k else c
            ne = tuple(ne)
            acc = out.get(ne)
            s = t if acc is None else acc + t
            if s.is_zero():
                out.pop(ne, None)
            else:
                out[ne] = s
        return MultiLaurent(newvars, out)

    def rename(self, mapping: dict) -> "MultiLaurent":
        """Bijective variable renaming VarId -> VarId."""
        newv = tuple(mapping.get(v, v) for v in self.vars)
        order = sorted(range(len(newv)), key=lambda i: newv[i])
        vars = tuple(newv[i] for i in order)
        return MultiLaurent(vars, {tuple(e[i] for i in order): c for e, c in self.terms.items()})

    def swap_vars(self, v1: VarId, v2: VarId) -> "MultiLaurent":
        i, j = self.vars.index(v1), self.vars.index(v2)
        out = {}
        for e, c in self.terms.items():
            le = list(e)
            le[i], le[j] = le[j], le[i]
            out[tuple(le)] = c
        return MultiLaurent(self.vars, out)

    def coeff_of(self, v: VarId, power: int) -> "MultiLaurent":
        """Coefficient of v**power, a polynomial in the remaining variables."""
        i = self.vars.index(v)
        newvars = self.vars[:i] + self.vars[i + 1:]
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + e[i + 1:]] = c
        return MultiLaurent(newvars, out)

    def mul_monomial(self, v: VarId, power: int) -> "MultiLaurent":
        i = self.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            le = list(e)
            le[i] += power
            out[tuple(le)] = c
        return MultiLaurent(self.vars, out)

    def limit_all(self, value) -> CycQ:
        """All variables sent to the same value."""
        return self.eval({v: value for v in self.vars})

    # -- division ----------------------------------------------------------
    def divide_exact(self, den: "MultiLaurent") -> "MultiLaurent":
        """Exact quotient in the Laurent ring; raises NonExactDivision otherwise.

        Negative exponents are cleared by a monomial shift first, then
        multivariate long division runs on plain polynomials.
        """
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        vars, t1, t2 = self._aligned(den)
        nv = len(vars)
        shift1 = tuple(-min((e[i] for e in t1), default=0) for i in range(nv))
        shift2 = tuple(-min((e[i] for e in t2), default=0) for i in range(nv))
        num_t = {tuple(a + s for a, s in zip(e, shift1)): c for e, c in t1.items()}
        den_t = {tuple(a + s for a, s in zip(e, shift2)): c for e, c in t2.items()}
        quot = _long_division(num_t, den_t, vars)
        back = tuple(s2 - s1 for s1, s2 in zip(shift1, shift2))
        return MultiLaurent(vars, {tuple(a + s for a, s in zip(e, back)): c for e, c in quot.items()})

    def divide_var_difference(self, vb: VarId, va: VarId) -> "MultiLaurent":
        """Exact quotient by (vb - va), by synthetic division in vb."""
        ib, ia = self.vars.index(vb), self.vars.index(va)
        groups: dict = {}
        for e, c in self.terms.items():
            k = e[ib]
            le = list(e)
            le[ib] = 0
            groups.setdefault(k, {})[tuple(le)] = c
        if not groups:
            return MultiLaurent(self.vars)
        if min(groups) < 0:
            raise NonExactDivision("negative powers in synthetic division")
        out: dict = {}
        carry: dict = {}
        for k in range(max(groups), 0, -1):
            cur = dict(groups.get(k, {}))
            for e, c in carry.items():
                acc = cur.get(e)
                s = c if acc is None else acc + c
                if s.is_zero():
                    cur.pop(e, None)
                else:
                    cur[e] = s
            # quotient coefficient of vb^{k-1} is cur; carry becomes x_a * cur
            for e, c in cur.items():
                le = list(e)
                le[ib] = k - 1
                out[tuple(le)] = c
            carry = {}
            for e, c in cur.items():
                le = list(e)
                le[ia] += 1
                carry[tuple(le)] = c
        rem = dict(groups.get(0, {}))
        for e, c in carry.items():
            acc = rem.get(e)
            s = c if acc is None else acc + c
            if s.is_zero():
                rem.pop(e, None)
            else:
                rem[e] = s
        if rem:
            raise NonExactDivision(
                f"({vb} - {va}) does not divide exactly",
                remainder=MultiLaurent(self.vars, rem),
            )
        return MultiLaurent(self.vars, out)

    # -- output -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = " ".join(
                f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            parts.append(f"{c} * {mono}" if mono else f"{c}")
        return "  +  ".join(parts)

    __repr__ = __str__


def _remap(p: MultiLaurent, allvars: tuple) -> dict:
    pos = [allvars.index(v) for v in p.vars]
    n = len(allvars)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for i, k in enumerate(e):
            ne[pos[i]] = k
        out[tuple(ne)] = c
    return out


def _long_division(num: dict, den: dict, vars: tuple) -> dict:
    """Multivariate long division over the field Q(q); exact or raises."""
    lead = max(den)
    lead_inv = den[lead].inv()
    rem = dict(num)
    quot: dict = {}
    while rem:
        e = max(rem)
        diff = tuple(a - b for a, b in zip(e, lead))
        if any(d < 0 for d in diff):
            raise NonExactDivision(
                "nonexact polynomial division",
                remainder=MultiLaurent(vars, rem),
            )
        c = rem[e] * lead_inv
        quot[diff] = c
        for ed, cd in den.items():
            et = tuple(a + b for a, b in zip(diff, ed))
            s = rem.get(et, ZERO) - c * cd
            if s.is_zero():
                rem.pop(et, None)
            else:
                rem[et] = s
    return quot


def binomial_qz(vi: VarId, vj: VarId, ci, cj) -> MultiLaurent:
    """The two-term polynomial ci*vi + cj*vj."""
    vars = tuple(sorted((vi, vj)))
    i, j = vars.index(vi), vars.index(vj)
    e1 = [0, 0]
    e1[i] = 1
    e2 = [0, 0]
    e2[j] = 1
    terms = {}
    ci, cj = _coerce(ci), _coerce(cj)
    if not ci.is_zero():
        terms[tuple(e1)] = ci
    if not cj.is_zero():
        terms[tuple(e2)] = cj
    return MultiLaurent(vars, terms)
