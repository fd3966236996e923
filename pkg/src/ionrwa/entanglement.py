"""
Effective two-qubit description of the ion state and its concurrence.

The motional pair {|alpha>, |-alpha>} is orthogonalized into {|0>, |1>} with
|alpha> = |0> and |-alpha> = P|0> + M|1>, giving a qubit (g, e) x qubit (0, 1)
state in the ordered basis {g0, g1, e0, e1}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ContractError
from .fock import hermitian_eig

SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)
RANK_RTOL = 4 * np.finfo(float).eps
LAMBDA_FLOOR = 16 * np.finfo(float).eps


@dataclass(frozen=True)
class QubitMap:
    p: float
    m: float


def orthogonalize(alpha: float) -> QubitMap:
    """Overlap P = exp(-2 alpha^2) and complement M = sqrt(1 - exp(-4 alpha^2))."""
    if not alpha >= 0:
        raise ContractError(f"alpha must be >= 0, got {alpha!r}")
    return QubitMap(p=math.exp(-2.0 * alpha * alpha), m=math.sqrt(1.0 - math.exp(-4.0 * alpha * alpha)))


def state_vector(theta: float, alpha: float) -> np.ndarray:
    """cos(theta)|g,0> - i sin(theta)|e>(P|0> + M|1>) in the basis {g0, g1, e0, e1}."""
    q = orthogonalize(alpha)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([c, 0.0, -1j * q.p * s, -1j * q.m * s])


def _density_from_blocks(theta: float, q: QubitMap) -> np.ndarray:
    # blocks written out in the orthogonal motional basis
    p, m = q.p, q.m
    s2, c2, sin2 = math.sin(theta) ** 2, math.cos(theta) ** 2, math.sin(2.0 * theta)
    gg = np.array([[c2, 0.0], [0.0, 0.0]], dtype=complex)
    ee = s2 * np.array([[p * p, p * m], [p * m, m * m]], dtype=complex)
    eg = (-0.5j * sin2) * np.array([[p, 0.0], [m, 0.0]], dtype=complex)
    ge = (0.5j * sin2) * np.array([[p, m], [0.0, 0.0]], dtype=complex)
    return np.block([[gg, ge], [eg, ee]])


def density_from_state(theta: float, alpha: float) -> np.ndarray:
    """Two-qubit density matrix of the evolved state at mixing angle ``theta``.

    Built twice, from the block formulas and from the outer product of
    :func:`state_vector`; the two must agree to 1e-12.
    """
    q = orthogonalize(alpha)
    psi = state_vector(theta, alpha)
    direct = np.outer(psi, psi.conj())
    blocks = _density_from_blocks(theta, q)
    gap = float(np.max(np.abs(direct - blocks)))
    if gap > 1e-12:
        raise ConsistencyError(f"block and outer-product densities differ by {gap:.3e}")
    return direct


def check_density(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ContractError(f"two-qubit density must be 4x4, got {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > 1e-12:
        raise ContractError(f"density not Hermitian (residual {herm:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-12:
        raise ContractError(f"density trace {tr!r} != 1")
    return rho


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """(sigma_y x sigma_y) rho^* (sigma_y x sigma_y)."""
    rho = check_density(rho)
    return SIGMA_YY @ rho.conj() @ SIGMA_YY


def _psd_sqrt(rho: np.ndarray) -> tuple[np.ndarray, float]:
    w, v = hermitian_eig(rho)
    clamp = float(max(0.0, -w.min()))
    if clamp > 1e-8:
        raise ContractError(f"density has eigenvalue {w.min():.3e} < -1e-8")
    # eigenvalues at roundoff level are zero; their square roots would not be
    w = np.where(w < RANK_RTOL * max(float(w.max()), 0.0), 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T, clamp


def wootters(rho: np.ndarray, details: bool = False):
    """Wootters concurrence max(l1 - l2 - l3 - l4, 0).

    The l_i are square roots of the eigenvalues of rho * spin_flip(rho).  That
    spectrum equals the one of the Hermitian matrix sqrt(rho) spin_flip(rho)
    sqrt(rho) = M M^dag with M = sqrt(rho) (Y x Y) sqrt(rho)^*, so the l_i
    are taken as the singular values of M.  This avoids squaring them, which
    would lose everything below ~1e-8.  With ``details=True`` also returns
    the sorted l_i and the eigenvalue clamp applied to rho.
    """
    rho = check_density(rho)
    root, clamp = _psd_sqrt(rho)
    factor = root @ SIGMA_YY @ root.conj()
    lam = np.linalg.svd(factor, compute_uv=False)  # descending
    # singular values are bounded by tr(rho) = 1; below this floor they are roundoff
    lam = np.where(lam < LAMBDA_FLOOR, 0.0, lam)
    c = max(float(lam[0] - lam[1] - lam[2] - lam[3]), 0.0)
    if details:
        return c, lam, clamp
    return c


def pure_concurrence(a: complex, b: complex, c: complex, d: complex) -> float:
    """2|ad - bc| for amplitudes over {g0, g1, e0, e1}."""
    norm = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise ContractError(f"amplitudes not normalized (sum |x|^2 = {norm!r})")
    return 2.0 * abs(a * d - b * c)


def tangle(rho: np.ndarray) -> float:
    """Squared Wootters concurrence."""
    return wootters(rho) ** 2
