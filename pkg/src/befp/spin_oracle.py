"""Brute-force reference: twisted XXZ Hamiltonians, six-vertex transfer
matrices, groundstates, overlaps, and the semi-infinite-cylinder ratio.

All matrices are dense, sector-restricted, complex double precision.  Site
bitmasks follow the package convention (bit i set = site i+1 up).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qkz import bit, sector_states

#: (twist angle, magnetisation) of the three solvable groundstate cases
CASES = {
    "odd_plus": (0.0, +1),
    "odd_minus": (0.0, -1),
    "even_zero": (-math.pi / 3, 0),
}

Q_NUM = cmath.exp(2j * cmath.pi / 3)
DEGENERACY_RTOL = 1e-9
REFERENCE_MIN_ABS = 1e-8


def case_for(N: int, mu) -> str:
    mu = {1: "+", -1: "-", 0: "0", "+": "+", "-": "-", "0": "0"}[mu]
    if N % 2 == 0:
        if mu != "0":
            raise ValueError("even N pairs with mu=0")
        return "even_zero"
    if mu == "0":
        raise ValueError("odd N pairs with mu=+/-")
    return "odd_plus" if mu == "+" else "odd_minus"


def sector_basis(N: int, mu: int) -> list:
    if abs(mu) > N or (N + mu) % 2:
        raise ValueError(f"invalid sector mu={mu} for N={N}")
    return sector_states(N, (N + mu) // 2)


def build_hamiltonian(N: int, delta: float, phi: float, mu: int) -> np.ndarray:
    """Sector-restricted XXZ Hamiltonian with a diagonal twist at the seam."""
    basis = sector_basis(N, mu)
    index = {s: i for i, s in enumerate(basis)}
    dim = len(basis)
    H = np.zeros((dim, dim), dtype=complex)
    hop_bulk = -1.0
    hop_f = -cmath.exp(-2j * phi)   # sp_N sm_1: up at 1, down at N -> swapped
    hop_b = -cmath.exp(2j * phi)
    for s in basis:
        col = index[s]
        diag = 0.0
        for a in range(1, N + 1):
            b = a % N + 1
            diag += 1.0 if bit(s, a) == bit(s, b) else -1.0
        H[col, col] = -0.5 * delta * diag
        for a in range(1, N + 1):
            b = a % N + 1
            if bit(s, a) == bit(s, b):
                continue
            t = s ^ (1 << (a - 1)) ^ (1 << (b - 1))
            row = index[t]
            if a < N:
                H[row, col] += hop_bulk
            elif bit(s, 1) == 1:      # site 1 up, site N down
                H[row, col] += hop_f
            else:
                H[row, col] += hop_b
    herm = np.abs(H - H.conj().T).max()
    if herm > 1e-12:
        raise AssertionError(f"Hamiltonian not Hermitian: deviation {herm:.2e}")
    return H


def _r_matrix(z: complex) -> np.ndarray:
    den = Q_NUM - z / Q_NUM
    if abs(den) < 1e-12:
        raise ZeroDivisionError("spectral parameter hits the weight pole z = q^2")
    a = (Q_NUM * z - 1 / Q_NUM) / den
    b = (z - 1.0) / den
    c1 = (Q_NUM - 1 / Q_NUM) * z / den
    c2 = (Q_NUM - 1 / Q_NUM) / den
    return np.array(
        [[a, 0, 0, 0], [0, b, c1, 0], [0, c2, b, 0], [0, 0, 0, a]], dtype=complex
    )


def transfer_matrix(N: int, phi: float, z: complex, inhomogeneities=None) -> np.ndarray:
    """Full 2^N transfer matrix of the twisted six-vertex model.

    The homogeneous case (no inhomogeneities) is tr_0 of the R(z) product;
    with inhomogeneities z_1..z_N the R arguments are z_i / z, matching the
    inhomogeneous eigenvector statement (all z_i equal w gives T(w/z)).
    """
    if N > 12:
        raise ValueError("full transfer matrix capped at N=12")
    dim = 1 << N
    # operator on aux (first factor) tensor chain, built site by site
    M = np.eye(2 * dim, dtype=complex).reshape(2, dim, 2, dim)
    for site in range(1, N + 1):
        w = z if inhomogeneities is None else inhomogeneities[site - 1] / z
        r = _r_matrix(w).reshape(2, 2, 2, 2)
        # indices: aux, left block, site, right block
        left = 1 << (site - 1)
        right = 1 << (N - site)
        Mt = M.reshape(2, left, 2, right, 2, dim)
        M = np.einsum("asbu,blutcv->alstcv", r, Mt).reshape(2, dim, 2, dim)
    tw = np.exp(1j * phi)
    T = tw * M[0, :, 0, :] + (1 / tw) * M[1, :, 1, :]
    return T


def sector_restrict(T: np.ndarray, N: int, mu: int) -> np.ndarray:
    basis = sector_basis(N, mu)
    idx = [_mask_to_row(s, N) for s in basis]
    return T[np.ix_(idx, idx)]


def _mask_to_row(mask: int, N: int) -> int:
    """Tensor-basis row of a bitmask (site 1 is the leftmost factor; up = 0)."""
    row = 0
    for i in range(1, N + 1):
        row = (row << 1) | (0 if bit(mask, i) else 1)
    return row


def translation_matrix(N: int) -> np.ndarray:
    """tau^{-1}: right shift |a_1...a_N> -> |a_N a_1...a_{N-1}>."""
    dim = 1 << N
    T = np.zeros((dim, dim))
    for mask in range(dim):
        last = bit(mask, N)
        t = ((mask << 1) & (dim - 1)) | last
        T[_mask_to_row(t, N), _mask_to_row(mask, N)] = 1.0
    return T


@dataclass
class Groundstate:
    N: int
    case: str
    energy: float
    components: dict          # bitmask -> complex, reference component = 1

    def overlap(self, m: int) -> complex:
        head = (1 << m) - 1
        return sum(v for s, v in self.components.items() if s & head == head)


def groundstate(N: int, case: str) -> Groundstate:
    """Unique lowest eigenvector of the sector, reference-normalised."""
    phi, mu = CASES[case]
    if case.startswith("odd") and N % 2 == 0:
        raise ValueError(f"case {case} needs odd N")
    if case == "even_zero" and N % 2:
        raise ValueError("case even_zero needs even N")
    H = build_hamiltonian(N, -0.5, phi, mu)
    w, V = np.linalg.eigh(H)
    if len(w) > 1 and abs(w[1] - w[0]) <= DEGENERACY_RTOL * max(1.0, abs(w[0])):
        raise ArithmeticError(f"degenerate lowest eigenvalue in sector (N={N}, {case})")
    expected = -0.75 * N
    if abs(w[0] - expected) > 1e-10 * max(1.0, abs(expected)):
        raise ArithmeticError(f"lowest eigenvalue {w[0]} differs from {expected}")
    basis = sector_basis(N, mu)
    vec = V[:, 0]
    n_up = (N + mu) // 2
    ref = (1 << n_up) - 1
    ref_val = vec[basis.index(ref)]
    if abs(ref_val) < REFERENCE_MIN_ABS:
        raise ArithmeticError("reference component too small to normalise")
    vec = vec / ref_val
    return Groundstate(N, case, float(w[0]), dict(zip(basis, vec)))


def overlap_oracle(N: int, m: int, case: str) -> complex:
    """Sum of groundstate components whose first m spins are all up."""
    return groundstate(N, case).overlap(m)


def befp_oracle(N: int, m: int, case: str) -> complex:
    total = overlap_oracle(N, 0, case)
    if abs(total) < 1e-14:
        raise ZeroDivisionError("vanishing full component sum")
    return overlap_oracle(N, m, case) / total


@dataclass
class CylinderResult:
    value: complex
    gap: float                  # |second| / |largest| eigenvalue modulus ratio
    warning: str | None = None


def cylinder_ratio(N: int, L: int, m: int, top_mask: int, z: complex,
                   gap_tol: float = 0.999) -> CylinderResult:
    """Fixed/free partition-function ratio on the length-L cylinder.

    The top boundary configuration enters as the ket; the free end is summed
    with the all-ones covector, restricted (automatically, by magnetisation
    conservation) to the top's sector.  Converges to the boundary emptiness
    formation probability when the sector's leading eigenvalue is
    nondegenerate in modulus.
    """
    mu = 2 * bin(top_mask).count("1") - N
    phi = 0.0 if N % 2 else -math.pi / 3
    T = sector_restrict(transfer_matrix(N, phi, z), N, mu)
    basis = sector_basis(N, mu)
    col = np.zeros(len(basis), dtype=complex)
    col[basis.index(top_mask)] = 1.0
    for _ in range(L):
        col = T @ col
    head = (1 << m) - 1
    num = sum(col[i] for i, s in enumerate(basis) if s & head == head)
    den = col.sum()
    ev = np.sort(np.abs(np.linalg.eigvals(T)))[::-1]
    gap = float(ev[1] / ev[0]) if len(ev) > 1 else 0.0
    warning = None
    if gap > gap_tol:
        warning = (f"leading eigenvalue nearly degenerate in modulus "
                   f"(|l2/l1| = {gap:.6f}); the cylinder limit may not converge")
    if abs(den) < 1e-14:
        raise ZeroDivisionError("free-boundary partition function vanishes")
    return CylinderResult(num / den, gap, warning)
