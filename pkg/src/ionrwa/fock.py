"""
Truncated harmonic-oscillator kernel.

Dense complex matrices on the Fock space {|0>, ..., |N>}: ladder operators,
coherent states, normal-ordered displacement factors, a Hermitian
eigensolver and piecewise-constant (midpoint) time propagation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .closed_forms import minimal_cutoff
from .errors import ContractError, CutoffError, DomainError, PropagationError

HERMITIAN_RTOL = 1e-12


@dataclass(frozen=True)
class FockSpace:
    """Oscillator truncated at occupation ``cutoff`` (dimension cutoff + 1)."""

    cutoff: int

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise DomainError(f"Fock cutoff must be an integer >= 1, got {self.cutoff!r}")

    @property
    def dim(self) -> int:
        return self.cutoff + 1


def ladder(space: FockSpace) -> tuple[np.ndarray, np.ndarray]:
    """Annihilation and creation matrices, a|n> = sqrt(n)|n-1>."""
    a = np.diag(np.sqrt(np.arange(1, space.dim, dtype=float)), k=1).astype(complex)
    return a, a.conj().T.copy()


def number_operator(space: FockSpace) -> np.ndarray:
    return np.diag(np.arange(space.dim, dtype=float)).astype(complex)


def coherent_vector(alpha: float, space: FockSpace) -> np.ndarray:
    """Fock amplitudes of the coherent state |alpha> for real ``alpha``.

    Uses the recurrence c_{n+1} = c_n * alpha / sqrt(n+1) so large cutoffs do
    not overflow a factorial.
    """
    need = minimal_cutoff(alpha)
    if space.cutoff < need:
        raise CutoffError(alpha, space.cutoff, need)
    c = np.empty(space.dim, dtype=complex)
    c[0] = math.exp(-alpha * alpha / 2.0)
    for n in range(space.dim - 1):
        c[n + 1] = c[n] * alpha / math.sqrt(n + 1)
    return c


def _nilpotent_exp(x: np.ndarray) -> np.ndarray:
    # Taylor series is exact: strictly triangular x has x^(dim) = 0
    dim = x.shape[0]
    result = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for n in range(1, dim + 1):
        term = term @ x / n
        if not term.any():
            break
        result = result + term
    return result


def normal_ordered_shift(eta: float, sign: int, space: FockSpace) -> tuple[np.ndarray, float]:
    """Factors of exp(i*sign*eta*(a + a^dag)) in normal order.

    Returns ``(exp(i s eta a^dag) @ exp(i s eta a), exp(-eta^2/2))``; their
    product is the position exponential on the untruncated space.
    """
    if not eta >= 0:
        raise DomainError(f"eta must be >= 0, got {eta!r}")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    scalar = math.exp(-eta * eta / 2.0)
    if eta == 0:
        return np.eye(space.dim, dtype=complex), scalar
    a, adag = ladder(space)
    coeff = 1j * sign * eta
    return _nilpotent_exp(coeff * adag) @ _nilpotent_exp(coeff * a), scalar


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    return hermiticity_residual(m) <= rtol * scale


def require_hermitian(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError(f"{what} must be square, got shape {m.shape}")
    if not is_hermitian(m):
        raise ContractError(
            f"{what} is not Hermitian: max|M - M^dag| = {hermiticity_residual(m):.3e}"
        )
    return m


def _jacobi_eigh(m: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100):
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    norm = np.linalg.norm(a)
    if norm == 0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    else:
        raise ContractError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eig(m: np.ndarray, method: str = "lapack") -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.

    ``method="jacobi"`` runs cyclic complex Jacobi rotations; the default
    ``"lapack"`` calls :func:`numpy.linalg.eigh`, which is needed for the
    propagation budget at cutoffs around 100.
    """
    m = require_hermitian(m)
    if method == "jacobi":
        return _jacobi_eigh(m)
    if method == "lapack":
        # symmetrize so LAPACK sees exactly the Hermitian part
        w, v = np.linalg.eigh((m + m.conj().T) / 2.0)
        return w, v
    raise DomainError(f"unknown eigensolver method {method!r}")


def unitary_step(h: np.ndarray, dt: float) -> np.ndarray:
    """exp(-i H dt) built from the eigendecomposition of ``h``."""
    if not math.isfinite(dt):
        raise DomainError(f"dt must be finite, got {dt!r}")
    w, v = hermitian_eig(h)
    return (v * np.exp(-1j * w * dt)) @ v.conj().T


def propagate(
    hamiltonian_at: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    t0: float,
    dt: float,
    steps: int,
    period_steps: int | None = None,
) -> Iterator[np.ndarray]:
    """Yield the state after each of ``steps`` midpoint steps of size ``dt``.

    With ``period_steps`` set, the generator is assumed periodic with period
    ``period_steps * dt`` and step propagators are reused across periods.
    """
    cache: dict[int, np.ndarray] = {}
    psi = np.asarray(psi0, dtype=complex)
    for j in range(steps):
        key = j % period_steps if period_steps else j
        u = cache.get(key)
        if u is None:
            u = unitary_step(hamiltonian_at(t0 + (j + 0.5) * dt), dt)
            if period_steps:
                cache[key] = u
        psi = u @ psi
        yield psi


def evolve(
    hamiltonian_at: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    t0: float,
    t1: float,
    steps: int,
    period: float | None = None,
) -> np.ndarray:
    """Propagate ``psi0`` from ``t0`` to ``t1`` with the exponential midpoint rule."""
    if int(steps) != steps or steps < 1:
        raise DomainError(f"steps must be a positive integer, got {steps!r}")
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-10:
        raise ContractError(f"psi0 must be normalized, |psi0| = {np.linalg.norm(psi0)!r}")
    dt = (t1 - t0) / steps
    period_steps = None
    if period is not None and dt != 0:
        ratio = period / dt
        if abs(ratio - round(ratio)) < 1e-9 and round(ratio) >= 1:
            period_steps = int(round(ratio))
    psi = psi0
    for psi in propagate(hamiltonian_at, psi0, t0, dt, int(steps), period_steps):
        pass
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-8:
        raise PropagationError(f"norm drifted to {norm!r} after {steps} steps")
    return psi
