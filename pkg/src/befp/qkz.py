"""Polynomial solutions of the level-one qKZ system at q = exp(2*pi*i/3).

Vectors are built from an explicit reference component by divided-difference
operators, one adjacent up-down swap at a time.  Components are stored as
exact Laurent polynomials in z_1..z_N over Q(q); a companion point evaluator
computes single components at exact rational points without constructing the
polynomials (much faster for scalar-product work).

Spin patterns are bitmasks: bit i set means site i+1 carries an up spin.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .exactcore import (
    CycQ, MultiLaurent, NonExactDivision, ONE, Q, QI, Q_MINUS_QI, VarId, ZERO,
    binomial_qz, q_pow, zeta_pow, zvars,
)

MU_PLUS, MU_MINUS, MU_ZERO = "+", "-", "0"

#: delta(mu) exponent in the reduction relation: only mu=+ carries the z_i power.
REDUCTION_DELTA = {MU_PLUS: 1, MU_MINUS: 0, MU_ZERO: 0}


def sector_states(N: int, n_up: int) -> list:
    """All bitmasks on N sites with the given number of up spins, ascending."""
    out = []
    for bits in combinations(range(N), n_up):
        m = 0
        for b in bits:
            m |= 1 << b
        out.append(m)
    return sorted(out)


def magnetisation(mask: int, N: int) -> int:
    return 2 * bin(mask).count("1") - N


def n_up_for(N: int, mu: str) -> int:
    if mu == MU_ZERO:
        if N % 2:
            raise ValueError("mu=0 requires even N")
        return N // 2
    if N % 2 == 0:
        raise ValueError("mu=+/- requires odd N")
    return (N + 1) // 2 if mu == MU_PLUS else (N - 1) // 2


def reference_mask(N: int, mu: str) -> int:
    """Aligned pattern up...up down...down of the sector."""
    return (1 << n_up_for(N, mu)) - 1


def bit(mask: int, i: int) -> int:
    """Spin at site i (1-based): 1 = up."""
    return (mask >> (i - 1)) & 1


def _qz_factor(vi: VarId, vj: VarId) -> MultiLaurent:
    """(q z_i - q^{-1} z_j), without the 1/(q - q^{-1})."""
    return binomial_qz(vi, vj, Q, -QI)


def reference_polynomial(N: int, mu: str) -> MultiLaurent:
    """Closed-form aligned component of Psi^mu_N."""
    zs = zvars(N)
    m = n_up_for(N, mu)
    poly = MultiLaurent.const(1, zs)
    count = 0
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            poly = poly * _qz_factor(zs[i - 1], zs[j - 1])
            count += 1
    for i in range(m + 1, N + 1):
        for j in range(i + 1, N + 1):
            poly = poly * _qz_factor(zs[i - 1], zs[j - 1])
            count += 1
    if mu == MU_PLUS:
        for i in range(m + 1, N + 1):
            poly = poly.mul_monomial(zs[i - 1], 1)
    return poly.scale(Q_MINUS_QI.inv() ** count)


def divided_difference(f: MultiLaurent, i: int, N: int, inverse: bool = False) -> MultiLaurent:
    """delta_i f (or delta_i^{-1} f) acting on z_i, z_{i+1}; exact."""
    if not 1 <= i <= N - 1:
        raise ValueError(f"site index {i} out of range for N={N}")
    zi, zj = VarId(0, i), VarId(0, i + 1)
    fs = f.swap_vars(zi, zj) if zi in f.vars and zj in f.vars else f
    mult = MultiLaurent.var(zj if inverse else zi, 1, Q_MINUS_QI)
    num = _qz_factor(zi, zj) * fs - mult * f
    return num.divide_var_difference(zj, zi)


@dataclass
class QkzVector:
    """Exact qKZ vector: components over the sector, Laurent in z_1..z_N."""

    N: int
    mu: str
    comps: dict                      # bitmask -> MultiLaurent
    prefix: int = 0                  # components restricted to masks with this many leading up spins

    @property
    def n(self) -> int:
        return self.N // 2

    def component(self, mask: int) -> MultiLaurent:
        return self.comps[mask]

    def homogeneous(self) -> dict:
        """All spectral parameters sent to 1; exact CycQ components."""
        return {m: p.limit_all(ONE) for m, p in self.comps.items()}

    def eval_point(self, point) -> dict:
        """Numeric/exact image at a full assignment tuple (z_1..z_N)."""
        assignment = {v: x for v, x in zip(zvars(self.N), point)}
        return {m: p.eval(assignment) for m, p in self.comps.items()}

    def dump(self) -> str:
        """One line per component: bitstring TAB laurent polynomial."""
        lines = []
        for m in sorted(self.comps):
            bits = "".join("1" if bit(m, i) else "0" for i in range(1, self.N + 1))
            lines.append(f"{bits}\t{self.comps[m]}")
        return "\n".join(lines)


def _masks_with_prefix(N: int, n_up: int, prefix: int) -> list:
    head = (1 << prefix) - 1
    return [m for m in sector_states(N, n_up) if m & head == head]


def _inversions(mask: int, N: int) -> int:
    inv = 0
    ups_seen_down = 0
    for i in range(1, N + 1):
        if bit(mask, i) == 0:
            ups_seen_down += 1
        else:
            inv += ups_seen_down
    return inv


def _bfs_components(N: int, mu: str, prefix: int) -> dict:
    """All sector components with the given up-prefix, by divided differences.

    Each component is derived from the neighbour obtained by undoing one
    adjacent down-up pair; the swap site stays outside the protected prefix,
    which keeps the whole construction inside the restricted family.
    """
    ref = reference_mask(N, mu)
    comps = {ref: reference_polynomial(N, mu)}
    masks = _masks_with_prefix(N, n_up_for(N, mu), prefix)
    for mask in sorted(masks, key=lambda m: _inversions(m, N)):
        if mask in comps:
            continue
        for i in range(prefix + 1, N):
            if bit(mask, i) == 0 and bit(mask, i + 1) == 1:
                prev = mask | (1 << (i - 1))
                prev &= ~(1 << i)
                if prev in comps:
                    comps[mask] = divided_difference(comps[prev], i, N)
                    break
        else:
            raise AssertionError(f"BFS could not derive component {mask:0{N}b}")
    return {m: comps[m] for m in masks}


@lru_cache(maxsize=None)
def components(N: int, mu: str, prefix: int = 0) -> QkzVector:
    """Cached qKZ vector, possibly restricted to an up-spin prefix."""
    return QkzVector(N, mu, _bfs_components(N, mu, prefix), prefix)


def build_psi_plus(n: int) -> QkzVector:
    """|Psi^+_{2n+1}>, all C(2n+1, n+1) components."""
    return components(2 * n + 1, MU_PLUS)


def build_psi_minus(n: int) -> QkzVector:
    """|Psi^-_{2n+1}> by the site-wise spin reversal of |Psi^+_{2n+1}>.

    Component at beta picks up z_i^{-1} for every up spin of beta and reads
    the spin-flipped component of Psi^+; the result is checked to be a
    polynomial with the expected aligned reference component.
    """
    N = 2 * n + 1
    plus = build_psi_plus(n)
    zs = zvars(N)
    comps = {}
    full = (1 << N) - 1
    for mask_p, poly in plus.comps.items():
        mask = full & ~mask_p
        out = poly
        for i in range(1, N + 1):
            if bit(mask, i):
                out = out.mul_monomial(zs[i - 1], -1)
                if out.min_degree_in(zs[i - 1]) < 0:
                    raise NonExactDivision(f"spin-reversed component {mask:b} is not polynomial")
        comps[mask] = out
    vec = QkzVector(N, MU_MINUS, comps)
    if vec.comps[reference_mask(N, MU_MINUS)] != reference_polynomial(N, MU_MINUS):
        raise AssertionError("reference component of Psi^- does not match its closed form")
    return vec


def build_psi_zero(n: int) -> QkzVector:
    """|Psi^0_{2n}> from |Psi^+_{2n+1}> with the last parameter sent to zero."""
    if n < 1:
        raise ValueError("n >= 1 required")
    N = 2 * n
    plus = build_psi_plus(n)
    zlast = VarId(0, N + 1)
    zs = zvars(N)
    pref = (QI - Q) ** n * q_pow(-N)
    comps = {}
    for mask_p, poly in plus.comps.items():
        at0 = poly.subs_value(zlast, ZERO)
        if bit(mask_p, N + 1) == 0:
            if not at0.is_zero():
                raise AssertionError("down-ending component survives the z=0 specialisation")
            continue
        mask = mask_p & ((1 << N) - 1)
        out = at0
        for v in zs:
            out = out.mul_monomial(v, -1)
            if out.min_degree_in(v) < 0:
                raise NonExactDivision("z=0 specialisation is not divisible by all z_i")
        comps[mask] = out.scale(pref)
    vec = QkzVector(N, MU_ZERO, comps)
    if vec.comps[reference_mask(N, MU_ZERO)] != reference_polynomial(N, MU_ZERO):
        raise AssertionError("reference component of Psi^0 does not match its closed form")
    return vec


def homogeneous_psi(N: int, mu: str) -> dict:
    """Exact groundstate components: the qKZ vector at z_1 = ... = z_N = 1."""
    if mu == MU_ZERO:
        return build_psi_zero(N // 2).homogeneous()
    if mu == MU_PLUS:
        return build_psi_plus((N - 1) // 2).homogeneous()
    return build_psi_minus((N - 1) // 2).homogeneous()


# ---------------------------------------------------------------------------
# Point evaluation without symbolic polynomials

class PointEvaluator:
    """Evaluates single components of Psi^mu_N at exact points.

    Uses the same divided-difference recursion as the symbolic build, but on
    values: the component at a point needs its BFS predecessor at the point
    and at the point with the two arguments swapped.  Memoised across calls.
    All entries of a point must be pairwise distinct (no coincident
    parameters), which every generic sampling in this package guarantees.
    """

    def __init__(self, N: int, mu: str):
        self.N = N
        self.mu = mu
        self.ref = reference_mask(N, mu)
        self.m = n_up_for(N, mu)
        self._memo: dict = {}

    def _ref_value(self, point) -> CycQ:
        N, m = self.N, self.m
        inv_qq = Q_MINUS_QI.inv()
        val = ONE
        for i in range(m):
            for j in range(i + 1, m):
                val = val * (Q * point[i] - QI * point[j]) * inv_qq
        for i in range(m, N):
            for j in range(i + 1, N):
                val = val * (Q * point[i] - QI * point[j]) * inv_qq
        if self.mu == MU_PLUS:
            for i in range(m, N):
                val = val * point[i]
        return val

    def value(self, mask: int, point: tuple) -> CycQ:
        key = (mask, point)
        got = self._memo.get(key)
        if got is not None:
            return got
        if mask == self.ref:
            out = self._ref_value(point)
        else:
            out = None
            for i in range(1, self.N):
                if bit(mask, i) == 0 and bit(mask, i + 1) == 1:
                    prev = (mask | (1 << (i - 1))) & ~(1 << i)
                    zi, zj = point[i - 1], point[i]
                    swapped = point[:i - 1] + (zj, zi) + point[i + 1:]
                    num = (Q * zi - QI * zj) * self.value(prev, swapped) \
                        - Q_MINUS_QI * zi * self.value(prev, point)
                    out = num * (zj - zi).inv()
                    break
            if out is None:
                raise ValueError(f"mask {mask:b} not in the mu={self.mu} sector")
        self._memo[key] = out
        return out


@lru_cache(maxsize=None)
def point_evaluator(N: int, mu: str) -> PointEvaluator:
    return PointEvaluator(N, mu)


def psi_zero_value(mask: int, point: tuple) -> CycQ:
    """Component of Psi^0_{2n} at a point, via the z_{2n+1} = 0 route."""
    N = len(point)
    n = N // 2
    ev = point_evaluator(N + 1, MU_PLUS)
    top = ev.value(mask | (1 << N), point + (ZERO,))
    pref = (QI - Q) ** n * q_pow(-N)
    for x in point:
        pref = pref * x.inv()
    return pref * top


def component_value(N: int, mu: str, mask: int, point: tuple) -> CycQ:
    """Exact component value at a point with pairwise-distinct entries."""
    point = tuple(x if isinstance(x, CycQ) else CycQ(x) for x in point)
    return point_evaluator(N, mu).value(mask, point)


# ---------------------------------------------------------------------------
# Structural identities

def cyclic_eigenvalues(N: int, mu: str) -> dict:
    """Diagonal factors lambda_up, lambda_down of the shift covariance."""
    n = N // 2
    if mu == MU_PLUS:
        return {1: q_pow(-3 * n), 0: q_pow(-3 * (n + 1))}
    if mu == MU_MINUS:
        return {1: q_pow(-3 * n + 3), 0: q_pow(-3 * n)}
    return {1: -q_pow(-3 * (n - 1) + 1), 0: -q_pow(-3 * (n - 1) - 1)}


def _rcheck_numerators(zi: VarId, zj: VarId):
    """Cleared R-check entries over the denominator (q z_i - q^{-1} z_j).

    Basis order uu, ud, du, dd; argument z_j / z_i.
    """
    a = binomial_qz(zi, zj, -QI, Q)
    b = binomial_qz(zi, zj, -ONE, ONE)
    c1 = MultiLaurent.var(zj, 1, Q_MINUS_QI)
    c2 = MultiLaurent.var(zi, 1, Q_MINUS_QI)
    zero = MultiLaurent(())
    return [
        [a, zero, zero, zero],
        [zero, c2, b, zero],
        [zero, b, c1, zero],
        [zero, zero, zero, a],
    ]


_PAIR_INDEX = {(1, 1): 0, (1, 0): 1, (0, 1): 2, (0, 0): 3}


def check_exchange(vec: QkzVector, i: int) -> bool:
    """Exchange equation at site i as a cleared polynomial identity."""
    zi, zj = VarId(0, i), VarId(0, i + 1)
    den = _qz_factor(zi, zj)
    num = _rcheck_numerators(zi, zj)
    for mask, poly in vec.comps.items():
        row = _PAIR_INDEX[(bit(mask, i), bit(mask, i + 1))]
        acc = MultiLaurent(())
        testable = True
        for (si, sj), col in _PAIR_INDEX.items():
            entry = num[row][col]
            if entry.is_zero():
                continue
            other = (mask & ~(1 << (i - 1)) & ~(1 << i)) | (si << (i - 1)) | (sj << i)
            if other not in vec.comps:
                testable = False  # neighbour outside a restricted family
                break
            acc = acc + entry * vec.comps[other]
        if testable and acc != den * poly.swap_vars(zi, zj):
            return False
    return True


def check_cyclic(vec: QkzVector) -> bool:
    """Shift covariance componentwise (q^6 = 1 absorbs the argument twist)."""
    N = vec.N
    lam = cyclic_eigenvalues(N, vec.mu)
    rot = {VarId(0, 1): VarId(0, 2)}
    rot.update({VarId(0, i): VarId(0, i + 1) for i in range(1, N)})
    rot[VarId(0, N)] = VarId(0, 1)
    for mask, poly in vec.comps.items():
        last = bit(mask, N)
        rotated_mask = ((mask << 1) & ((1 << N) - 1)) | last
        lhs = vec.comps[rotated_mask]
        rhs = poly.rename(rot).scale(lam[last])
        if lhs != rhs:
            return False
    return True


def check_wheel(vec: QkzVector, i: int, j: int, k: int) -> bool:
    """Vanishing under z_j = q^2 z_i, z_k = q^4 z_i."""
    vi, vj, vk = VarId(0, i), VarId(0, j), VarId(0, k)
    for poly in vec.comps.values():
        s = poly.subs_scaled(vj, q_pow(2), vi).subs_scaled(vk, q_pow(4), vi)
        if not s.is_zero():
            return False
    return True


def check_reduction(vec: QkzVector, smaller: QkzVector, i: int) -> bool:
    """Reduction at z_{i+1} = q^2 z_i against the omega-inserted smaller vector."""
    N = vec.N
    n = N // 2
    zs = zvars(N)
    vi, vj = zs[i - 1], zs[i]
    pref = MultiLaurent.const((-Q) ** (i - n), ())
    if REDUCTION_DELTA[vec.mu]:
        pref = pref * MultiLaurent.var(vi, 1, -Q)
    inv_qq = Q_MINUS_QI.inv()
    for jj in range(1, i):
        pref = pref * binomial_qz(zs[jj - 1], vi, Q, -QI).scale(inv_qq)
    for jj in range(i + 2, N + 1):
        pref = pref * binomial_qz(vi, zs[jj - 1], q_pow(3), -QI).scale(inv_qq)
    # variable map of the smaller vector: w_1..w_{N-2} -> z's without (i, i+1)
    keep = [v for v in zs if v not in (vi, vj)]
    ren = {VarId(0, t + 1): keep[t] for t in range(N - 2)}
    omega = {(1, 0): ONE, (0, 1): -QI}
    for mask, poly in vec.comps.items():
        lhs = poly.subs_scaled(vj, q_pow(2), vi)
        pair = (bit(mask, i), bit(mask, i + 1))
        if pair not in omega:
            if not lhs.is_zero():
                return False
            continue
        rest = 0
        pos = 0
        for t in range(1, N + 1):
            if t in (i, i + 1):
                continue
            rest |= bit(mask, t) << pos
            pos += 1
        rhs = pref.scale(omega[pair]) * smaller.comps[rest].rename(ren)
        if lhs != rhs:
            return False
    return True


def check_braid_limit_first(vec: QkzVector, smaller_plus: QkzVector, j: int) -> bool:
    """z_j -> 0 of the down-at-j part against the inserted Psi^+_{N-1}."""
    N = vec.N
    n = N // 2
    zs = zvars(N)
    keep = [v for v in zs if v != zs[j - 1]]
    ren = {VarId(0, t + 1): keep[t] for t in range(N - 1)}
    den = zeta_pow(6 * n - 3 * j - 1)
    if j % 2:
        den = -den
    den = den * (ONE - q_pow(-2)) ** (n - 1)
    den_inv = den.inv()
    for mask, poly in vec.comps.items():
        if bit(mask, j):
            continue
        lhs = poly.subs_value(zs[j - 1], ZERO)
        rest = 0
        pos = 0
        for t in range(1, N + 1):
            if t == j:
                continue
            rest |= bit(mask, t) << pos
            pos += 1
        pref = den_inv
        for idx in range(1, j):
            pref = pref * zeta_pow(-1 if bit(mask, idx) else 1)
        rhs = smaller_plus.comps[rest].rename(ren).scale(pref)
        if lhs != rhs:
            return False
    return True


def check_braid_limit_second(vec: QkzVector, smaller_minus: QkzVector, j: int) -> bool:
    """Leading z_j coefficient of the up-at-j part against Psi^-_{N-1}."""
    N = vec.N
    n = N // 2
    zs = zvars(N)
    keep = [v for v in zs if v != zs[j - 1]]
    ren = {VarId(0, t + 1): keep[t] for t in range(N - 1)}
    den = zeta_pow(3 * (j + 1))
    if j % 2 == 0:
        den = -den
    den = den * (ONE - q_pow(-2)) ** (n - 1)
    den_inv = den.inv()
    for mask, poly in vec.comps.items():
        if not bit(mask, j):
            continue
        lhs = poly.coeff_of(zs[j - 1], n - 1)
        rest = 0
        pos = 0
        for t in range(1, N + 1):
            if t == j:
                continue
            rest |= bit(mask, t) << pos
            pos += 1
        pref = den_inv
        for idx in range(1, j):
            pref = pref * zeta_pow(-1 if bit(mask, idx) else 1)
        rhs = smaller_minus.comps[rest].rename(ren).scale(pref)
        if lhs != rhs:
            return False
    return True


def degree_bounds(mu: str, n: int) -> tuple:
    """(total degree, max individual degree) of the components."""
    if mu == MU_PLUS:
        return n * (n + 1), n
    if mu == MU_MINUS:
        return n * n, n
    return n * (n - 1), n - 1


def check_degrees(vec: QkzVector) -> bool:
    total, indiv = degree_bounds(vec.mu, vec.n)
    zs = zvars(vec.N)
    for poly in vec.comps.values():
        if poly.is_zero():
            continue
        degs = {sum(e) for e in poly.terms}
        if degs != {total}:
            return False
        for v in zs:
            if v in poly.vars and poly.degree_in(v) > indiv:
                return False
            if v in poly.vars and poly.min_degree_in(v) < 0:
                return False
    return True


def check_path_independence(vec: QkzVector) -> bool:
    """Every adjacent down-up pair derives the same stored component."""
    N = vec.N
    for mask, poly in vec.comps.items():
        for i in range(vec.prefix + 1, N):
            if bit(mask, i) == 0 and bit(mask, i + 1) == 1:
                prev = (mask | (1 << (i - 1))) & ~(1 << i)
                if prev not in vec.comps:
                    continue
                if divided_difference(vec.comps[prev], i, N) != poly:
                    return False
    return True


def verify_qkz(vec: QkzVector, check: str, smaller: QkzVector | None = None) -> list:
    """Run one identity family; returns (name, passed) pairs."""
    N = vec.N
    results = []
    if check == "exchange":
        for i in range(1, N):
            results.append((f"exchange i={i}", check_exchange(vec, i)))
    elif check == "cyclic":
        results.append(("cyclic", check_cyclic(vec)))
    elif check == "wheel":
        triples = [(i, j, k) for i in range(1, N + 1) for j in range(i + 1, N + 1)
                   for k in range(j + 1, N + 1)]
        for (i, j, k) in triples:
            results.append((f"wheel ({i},{j},{k})", check_wheel(vec, i, j, k)))
    elif check == "reduction":
        if smaller is None:
            raise ValueError("reduction check needs the N-2 vector")
        for i in range(1, N):
            results.append((f"reduction i={i}", check_reduction(vec, smaller, i)))
    elif check == "braid":
        if smaller is None or vec.mu != MU_ZERO:
            raise ValueError("braid checks apply to mu=0 with Psi^+/Psi^- of size N-1")
        plus, minus = smaller
        for j in range(1, N + 1):
            results.append((f"braid-first j={j}", check_braid_limit_first(vec, plus, j)))
            results.append((f"braid-second j={j}", check_braid_limit_second(vec, minus, j)))
    else:
        raise ValueError(f"unknown check {check!r}")
    return results
