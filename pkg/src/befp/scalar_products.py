"""Boundary co-vectors and the six qKZ scalar products.

The two-site co-vector chi(x) solves the boundary Yang-Baxter equation and
factorises at x = 1; pairing it against the qKZ vectors with arguments
(..., x_i, 1/x_i, ...) defines the scalar products.  Evaluation is exact at
rational points via the qkz point evaluator; one-variable structure (degrees,
limits, the homogeneous point) is recovered by exact interpolation.
"""

from __future__ import annotations

from .exactcore import (
    CycQ, MultiLaurent, ONE, Q, QI, QQ, Q_MINUS_QI, VarId, ZERO,
    KIND_AUX, KIND_X, KIND_Z,
)
from . import qkz
from .qkz import MU_MINUS, MU_PLUS, MU_ZERO, bit

FAMILIES = ("S0", "S0bar", "Splus", "Sminus", "Splusbar", "Sminusbar")

_PAIRS = ((1, 1), (1, 0), (0, 1), (0, 0))


def chi_coeffs(x: CycQ) -> dict:
    """chi(x) on the dual pair basis; vanishes identically at x = q."""
    if x.is_zero():
        raise ZeroDivisionError("chi(x) has a pole at x = 0")
    xi = x.inv()
    diag = (QI * x - Q * xi) * (QI - Q).inv()
    ud = (x - Q) * (ONE - Q).inv()
    return {(1, 1): diag, (0, 0): diag, (1, 0): ud, (0, 1): xi * ud}


def varphi_coeffs(x: CycQ) -> dict:
    """varphi(x) on the single-site dual basis."""
    if x.is_zero():
        raise ZeroDivisionError("varphi(x) has a pole at x = 0")
    return {
        1: (ONE - Q * x) * (ONE - Q).inv(),
        0: (Q * x - QI * x.inv()) * Q_MINUS_QI.inv(),
    }


def chi_symbolic(v: VarId) -> dict:
    """chi with a symbolic parameter, entries Laurent in v."""
    diag = (MultiLaurent.var(v, 1, QI) - MultiLaurent.var(v, -1, Q)).scale((QI - Q).inv())
    ud = (MultiLaurent.var(v, 1) - MultiLaurent.const(Q, (v,))).scale((ONE - Q).inv())
    return {(1, 1): diag, (0, 0): diag, (1, 0): ud, (0, 1): ud.mul_monomial(v, -1)}


def varphi_symbolic(v: VarId) -> dict:
    up = (MultiLaurent.const(1, (v,)) - MultiLaurent.var(v, 1, Q)).scale((ONE - Q).inv())
    dn = (MultiLaurent.var(v, 1, Q) - MultiLaurent.var(v, -1, QI)).scale(Q_MINUS_QI.inv())
    return {1: up, 0: dn}


def family_shape(family: str, k: int, p: int) -> tuple:
    """(chain length, sector, up-prefix, #z, has barred parameter)."""
    n = p + k
    if family == "S0":
        return 2 * n, MU_ZERO, 2 * k, 2 * k, False
    if family == "S0bar":
        return 2 * n, MU_ZERO, 2 * k - 1, 2 * k - 1, True
    if family == "Splus":
        return 2 * n + 1, MU_PLUS, 2 * k + 1, 2 * k + 1, False
    if family == "Sminus":
        return 2 * n + 1, MU_MINUS, 2 * k + 1, 2 * k + 1, False
    if family == "Splusbar":
        return 2 * n + 1, MU_PLUS, 2 * k, 2 * k, True
    if family == "Sminusbar":
        return 2 * n + 1, MU_MINUS, 2 * k, 2 * k, True
    raise ValueError(f"unknown scalar-product family {family!r}")


def scalar_product(family: str, k: int, p: int, zs, xs, xbar=None) -> CycQ:
    """Exact value at a point; all parameters CycQ/rational, x's nonzero.

    The point entries, including every x_i paired with its inverse, must be
    pairwise distinct (generic); coincident points have no meaning here.
    """
    N, mu, prefix, nz, barred = family_shape(family, k, p)
    if len(zs) != nz or len(xs) != p or (xbar is None) == barred:
        raise ValueError("parameter arity mismatch")
    if family == "S0" and k > p:
        return ZERO
    zs = [x if isinstance(x, CycQ) else CycQ(x) for x in zs]
    xs = [x if isinstance(x, CycQ) else CycQ(x) for x in xs]
    args = list(zs)
    if barred:
        xbar = xbar if isinstance(xbar, CycQ) else CycQ(xbar)
        args.append(xbar)
    for x in xs:
        args.extend((x, x.inv()))
    point = tuple(args)
    chis = [chi_coeffs(x) for x in xs]
    phi = varphi_coeffs(xbar) if barred else None
    n_up = qkz.n_up_for(N, mu)
    total = ZERO
    head = (1 << prefix) - 1
    for mask in qkz.sector_states(N, n_up):
        if mask & head != head:
            continue
        w = ONE
        if barred:
            w = phi[bit(mask, prefix + 1)]
        base = prefix + (1 if barred else 0)
        for i in range(p):
            pair = (bit(mask, base + 2 * i + 1), bit(mask, base + 2 * i + 2))
            w = w * chis[i][pair]
        total = total + w * qkz.component_value(N, mu, mask, point)
    return total


def factorized_S0(variant: str, k: int, zs, xs) -> CycQ:
    """Closed product forms of the two factorised scalar products."""
    zs = [x if isinstance(x, CycQ) else CycQ(x) for x in zs]
    xs = [x if isinstance(x, CycQ) else CycQ(x) for x in xs]
    inv_qq = Q_MINUS_QI.inv()
    if variant == "kk":
        if len(zs) != 2 * k or len(xs) != k:
            raise ValueError("arity mismatch for S0_{k,k}")
        v = ONE
        for i in range(2 * k):
            for j in range(i + 1, 2 * k):
                v = v * (Q * zs[i] - QI * zs[j]) * inv_qq
        for x in xs:
            xi = x.inv()
            v = v * (Q * x - QI * xi) * (Q * xi - QI * x) * inv_qq * inv_qq
        for i in range(k):
            for j in range(i + 1, k):
                v = v * _x_cross(xs[i], xs[j])
        return v
    if variant == "kk_plus_1":
        if len(zs) != 2 * k or len(xs) != k + 1:
            raise ValueError("arity mismatch for S0_{k,k+1}")
        v = (ONE - QI) * (ONE + QI) ** 2
        for z in zs:
            v = v * (Q * z + QI * QI)
        for i in range(2 * k):
            for j in range(i + 1, 2 * k):
                v = v * (Q * zs[i] - QI * zs[j]) * inv_qq
        for x in xs:
            v = v * (ONE - Q * x) * (ONE - Q * x.inv()) * inv_qq * inv_qq
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                v = v * _x_cross(xs[i], xs[j])
        return v
    raise ValueError(f"unknown variant {variant!r}")


def _x_cross(xi: CycQ, xj: CycQ) -> CycQ:
    inv_qq4 = Q_MINUS_QI.inv() ** 4
    xii, xji = xi.inv(), xj.inv()
    return ((Q * xi - QI * xj) * (Q * xi - QI * xji)
            * (Q * xii - QI * xj) * (Q * xii - QI * xji) * inv_qq4)


# ---------------------------------------------------------------------------
# Exact one-variable structure by interpolation

def interpolate_univariate(fn, degree: int, shift: int = 0, seed_points=None) -> list:
    """Coefficients c_0..c_D of t^shift * fn(t), known polynomial of degree <= D.

    fn is evaluated at D+1 distinct rational points; the Vandermonde system is
    solved exactly.  Returns CycQ coefficients.
    """
    D = degree
    # nodes 16/7, 23/7, ...: never 0 or +-1, never integers, so they cannot
    # collide with the small-denominator sample points used elsewhere
    pts = seed_points or [QQ(16 + 7 * j, 7) for j in range(D + 1)]
    if len(pts) < D + 1:
        raise ValueError("not enough sample points")
    pts = [QQ(p) for p in pts[:D + 1]]
    vals = [fn(CycQ(t)) * CycQ(t) ** shift for t in pts]
    # Newton's divided differences, then expand to monomial coefficients
    coeffs = [v for v in vals]
    for j in range(1, D + 1):
        for i in range(D, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) * CycQ(pts[i] - pts[i - j]).inv()
    # expand Newton form
    poly = [ZERO] * (D + 1)
    acc = [ONE]          # running product prod (t - x_i), monomial coefficients
    for j in range(D + 1):
        for idx, c in enumerate(acc):
            poly[idx] = poly[idx] + coeffs[j] * c
        if j < D:
            xi = CycQ(pts[j])
            acc = [ZERO] + acc
            acc = [acc[t] - (xi * acc[t + 1] if t + 1 < len(acc) else ZERO)
                   for t in range(len(acc))]
    return poly


def eval_poly_coeffs(coeffs: list, t: CycQ) -> CycQ:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _line_exponents(family: str, k: int, p: int):
    """Distinct positive exponents for the one-parameter line through z=x=1."""
    _, _, _, nz, barred = family_shape(family, k, p)
    a = list(range(1, nz + 1))
    nxt = nz + 1
    ab = None
    if barred:
        ab = nxt
        nxt += 1
    b = list(range(nxt, nxt + p))
    return a, ab, b


def homogeneous_limit(family: str, k: int, p: int) -> CycQ:
    """Exact all-parameters-to-one limit of a scalar product.

    Parameters are restricted to the line z_i = t^{a_i}, x_j = t^{b_j} with
    distinct exponents; the scalar product times a monomial in t is a
    polynomial of bounded degree, interpolated exactly and read off at t = 1.
    """
    n = p + k
    a, ab, b = _line_exponents(family, k, p)
    odd = family not in ("S0", "S0bar")
    deg_z = n if odd else n - 1          # individual degree of the qKZ components
    width_x = n + 1 if odd else n        # chi width 2 on top of two argument slots
    width_bar = n + 2 if odd else n + 1
    shift = sum(width_x * e for e in b) + (width_bar * ab if ab else 0)
    degree = shift + sum(deg_z * e for e in a) + sum(width_x * e for e in b) \
        + (width_bar * ab if ab else 0)

    def fn(t: CycQ) -> CycQ:
        zs = [t ** e for e in a]
        xs = [t ** e for e in b]
        xbar = t ** ab if ab else None
        return scalar_product(family, k, p, zs, xs, xbar=xbar)

    coeffs = interpolate_univariate(fn, degree, shift=shift)
    return eval_poly_coeffs(coeffs, ONE)


def limit_z_to_infinity(family: str, k: int, p: int, zs, xs, xbar=None) -> CycQ:
    """Leading coefficient in the last z argument at degree n-1 (exact)."""
    n = p + k
    def fn(t: CycQ) -> CycQ:
        return scalar_product(family, k, p, list(zs) + [t], xs, xbar=xbar)
    coeffs = interpolate_univariate(fn, n - 1)
    return coeffs[n - 1]


def limit_xbar_to_zero(family: str, k: int, p: int, zs, xs) -> CycQ:
    """lim x->0 of x * Sbar(...; x; ...): the trailing Laurent coefficient."""
    n = p + k
    width = 2 * (n + 1)
    def fn(t: CycQ) -> CycQ:
        return scalar_product(family, k, p, zs, xs, xbar=t)
    coeffs = interpolate_univariate(fn, width, shift=1)
    return coeffs[0]


def degree_bound_holds(fn, degree: int, shift: int = 0, extra: int = 2) -> bool:
    """Certify fn (times t^shift) has degree <= degree along its variable.

    The interpolated polynomial from degree+1 points must reproduce `extra`
    further sample values.
    """
    coeffs = interpolate_univariate(fn, degree, shift=shift)
    for j in range(extra):
        t = CycQ(QQ(degree + 3 + j, 1))
        if eval_poly_coeffs(coeffs, t) != fn(t) * t ** shift:
            return False
    return True


# ---------------------------------------------------------------------------
# Symbolic boundary identities (fish equation, boundary Yang-Baxter)

def _rcheck_laurent(arg_num: MultiLaurent, arg_den: MultiLaurent):
    """R-check with Laurent argument w = arg_num/arg_den, denominator cleared.

    Returns (matrix of Laurent numerators, common denominator); the true
    matrix is numerators / denominator with basis order uu, ud, du, dd.
    """
    den = arg_den.scale(Q) - arg_num.scale(QI)
    a = arg_num.scale(Q) - arg_den.scale(QI)
    bfac = arg_num - arg_den
    c1 = arg_num.scale(Q_MINUS_QI)
    c2 = arg_den.scale(Q_MINUS_QI)
    z = MultiLaurent(())
    mat = [
        [a, z, z, z],
        [z, c2, bfac, z],
        [z, bfac, c1, z],
        [z, z, z, a],
    ]
    return mat, den


def _apply_covector_pair(cov: dict, mat, sites: tuple) -> dict:
    """Right-multiply a covector (dict over spin tuples) by a two-site matrix."""
    i, j = sites
    out = {}
    for spins, coeff in cov.items():
        si, sj = spins[i], spins[j]
        row = _PAIRS.index((si, sj))
        for col, (ti, tj) in enumerate(_PAIRS):
            entry = mat[row][col]
            if isinstance(entry, MultiLaurent) and entry.is_zero():
                continue
            tgt = list(spins)
            tgt[i], tgt[j] = ti, tj
            tgt = tuple(tgt)
            term = coeff * entry
            if tgt in out:
                out[tgt] = out[tgt] + term
            else:
                out[tgt] = term
    return out


def _tensor_covectors(*covs) -> dict:
    out = {(): MultiLaurent.const(1, ())}
    for cov in covs:
        nxt = {}
        for spins, coeff in out.items():
            for s, c in cov.items():
                key = spins + (s if isinstance(s, tuple) else (s,))
                term = coeff * c
                nxt[key] = nxt[key] + term if key in nxt else term
        out = nxt
    return out


def check_fish_equation() -> bool:
    """chi(x) R-check(x^2) = chi(1/x), symbolically in x."""
    vx = VarId(KIND_AUX, 1)
    chi = {k: v for k, v in chi_symbolic(vx).items()}
    arg_num = MultiLaurent.var(vx, 2)
    arg_den = MultiLaurent.const(1, (vx,))
    mat, den = _rcheck_laurent(arg_num, arg_den)
    cov = {(s1, s2): chi[(s1, s2)] for (s1, s2) in _PAIRS}
    lhs = _apply_covector_pair(cov, mat, (0, 1))
    for pair in _PAIRS:
        rhs_entry = _invert_var(chi[pair], vx)
        if lhs.get(pair, MultiLaurent(())) != den * rhs_entry:
            return False
    return True


def _invert_var(p: MultiLaurent, v: VarId) -> MultiLaurent:
    i = p.vars.index(v)
    out = {}
    for e, c in p.terms.items():
        le = list(e)
        le[i] = -le[i]
        out[tuple(le)] = c
    return MultiLaurent(p.vars, out)


def check_boundary_ybe() -> bool:
    """(chi(x) x chi(y)) Rc_23(1/(xy)) Rc_12(x/y) = (chi(y) x chi(x)) Rc_23(1/(xy)) Rc_34(x/y)."""
    vx, vy = VarId(KIND_X, 1), VarId(KIND_X, 2)
    chix = chi_symbolic(vx)
    chiy = chi_symbolic(vy)
    one = MultiLaurent.const(1, (vx, vy))
    m23, d23 = _rcheck_laurent(
        MultiLaurent.var(vx, -1) * MultiLaurent.var(vy, -1), one)
    m12, d12 = _rcheck_laurent(
        MultiLaurent.var(vx, 1) * MultiLaurent.var(vy, -1), one)
    lhs = _tensor_covectors(
        {p: chix[p] for p in _PAIRS}, {p: chiy[p] for p in _PAIRS})
    rhs = _tensor_covectors(
        {p: chiy[p] for p in _PAIRS}, {p: chix[p] for p in _PAIRS})
    lhs = _apply_covector_pair(lhs, m23, (1, 2))
    lhs = _apply_covector_pair(lhs, m12, (0, 1))
    rhs = _apply_covector_pair(rhs, m23, (1, 2))
    rhs = _apply_covector_pair(rhs, m12, (2, 3))
    keys = set(lhs) | set(rhs)
    for key in keys:
        l = lhs.get(key, MultiLaurent(()))
        r = rhs.get(key, MultiLaurent(()))
        if l != r:
            return False
    return True


def check_chi_projection() -> bool:
    """chi(x) restricted to down at its first site equals <down| x varphi(1/x)."""
    vx = VarId(KIND_AUX, 1)
    chi = chi_symbolic(vx)
    phi = varphi_symbolic(vx)
    return (chi[(0, 1)] == _invert_var(phi[1], vx)
            and chi[(0, 0)] == _invert_var(phi[0], vx))
