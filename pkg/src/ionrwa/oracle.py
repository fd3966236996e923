"""
Brute-force numerical checks of the closed forms.

The ion lives on the product space internal (x) motional, stored with the
ground-state block first: index = s * (N + 1) + n with s = 0 for |g> and
s = 1 for |e>.  Internal operators are 2x2 matrices in the (g, e) order with
sigma_z = |e><e| - |g><g|.
"""
from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_forms as cf
from . import entanglement
from .closed_forms import FULL, RWA, HamiltonianKind, SystemParams
from .errors import ConsistencyError, PropagationError
from .fock import (
    FockSpace,
    coherent_vector,
    evolve,
    hermiticity_residual,
    is_hermitian,
    normal_ordered_shift,
    number_operator,
    propagate,
)

I2 = np.eye(2, dtype=complex)
SZ = np.diag([-1.0, 1.0]).astype(complex)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = entanglement.SIGMA_Y.astype(complex)
SM = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |g><e|
SP = SM.T.copy()  # |e><g|

# Quarter turn about y taking (sigma_z, sigma_x) -> (-sigma_x, sigma_z).
QUARTER_TURN = math.cos(math.pi / 4) * I2 - 1j * math.sin(math.pi / 4) * SY
# exp(i pi sigma_y / 2) read literally equals i*sigma_y (a half turn).
LITERAL_ROTATION = 1j * SY

DEFAULT_ETAS = (0.0, 0.25, 0.5, 1.0)
DEFAULT_ALPHAS = (0.0, 0.5, 1.0, 2.0)


def space_for(params: SystemParams) -> FockSpace:
    params.require_cutoff()
    return FockSpace(int(params.fock_dim))


@functools.lru_cache(maxsize=64)
def _shift_pair(eta: float, cutoff: int):
    space = FockSpace(cutoff)
    d_plus, scalar = normal_ordered_shift(eta, 1, space)
    # (exp(i eta a^dag) exp(i eta a))^dag = exp(-i eta a^dag) exp(-i eta a) exactly; taking the
    # adjoint avoids the cancellation error of a second Taylor product in the high-n corner
    d_minus = d_plus.conj().T.copy()
    d_plus.setflags(write=False)
    d_minus.setflags(write=False)
    return d_plus, d_minus, scalar


def _certify(h: np.ndarray, what: str) -> np.ndarray:
    if not is_hermitian(h):
        raise ConsistencyError(
            f"{what} failed Hermiticity certification (residual {hermiticity_residual(h):.3e})"
        )
    return h


def _static_part(params: SystemParams, space: FockSpace) -> np.ndarray:
    return params.nu_ratio * np.kron(I2, number_operator(space)) - params.omega_a_ratio * np.kron(
        SX, np.eye(space.dim)
    )


def build_rotated_hamiltonian(
    kind: HamiltonianKind, params: SystemParams, t: float, space: FockSpace | None = None
) -> np.ndarray:
    """Rotated-frame Hamiltonian after normal ordering of the position exponentials."""
    kind = HamiltonianKind.parse(kind)
    space = space or space_for(params)
    d_plus, d_minus, scalar = _shift_pair(float(params.eta), space.cutoff)
    coupling = params.rabi_ratio / 2.0 * scalar
    fwd, back = np.exp(1j * t), np.exp(-1j * t)
    h = _static_part(params, space)
    if kind is FULL:
        h = h + coupling * np.kron(SZ, d_minus * fwd + d_plus * back)
    else:
        h = h + coupling * (np.kron(SM, d_minus) * fwd + np.kron(SP, d_plus) * back)
    return _certify(h, f"rotated {kind.value} Hamiltonian")


def build_lab_hamiltonian(params: SystemParams, t: float, space: FockSpace | None = None) -> np.ndarray:
    """Full Hamiltonian in the unrotated frame (sigma_x coupling, omega_A sigma_z)."""
    space = space or space_for(params)
    d_plus, d_minus, scalar = _shift_pair(float(params.eta), space.cutoff)
    coupling = params.rabi_ratio / 2.0 * scalar
    h = (
        params.nu_ratio * np.kron(I2, number_operator(space))
        + params.omega_a_ratio * np.kron(SZ, np.eye(space.dim))
        + coupling * np.kron(SX, d_minus * np.exp(1j * t) + d_plus * np.exp(-1j * t))
    )
    return _certify(h, "lab Hamiltonian")


def rotation_residual(
    params: SystemParams, t: float, space: FockSpace | None = None, spin_rotation: np.ndarray = QUARTER_TURN
) -> float:
    """max|R H_lab R^dag - H_rot| / max|H_rot| for R = spin_rotation (x) 1."""
    space = space or space_for(params)
    r = np.kron(spin_rotation, np.eye(space.dim))
    lab = build_lab_hamiltonian(params, t, space)
    rot = build_rotated_hamiltonian(FULL, params, t, space)
    return float(np.max(np.abs(r @ lab @ r.conj().T - rot)) / np.max(np.abs(rot)))


def product_state(ground: np.ndarray, excited: np.ndarray) -> np.ndarray:
    return np.concatenate([np.asarray(ground, dtype=complex), np.asarray(excited, dtype=complex)])


def _unnormalized_basis(alpha: float, space: FockSpace) -> tuple[np.ndarray, np.ndarray]:
    plus_a = coherent_vector(alpha, space)
    minus_a = coherent_vector(-alpha, space)
    return product_state(minus_a, plus_a), product_state(-minus_a, plus_a)


def basis_vectors(alpha: float, space: FockSpace) -> tuple[np.ndarray, np.ndarray]:
    """(|e,alpha> + |g,-alpha>)/sqrt(2) and (|e,alpha> - |g,-alpha>)/sqrt(2)."""
    r = 1.0 / math.sqrt(2.0)
    raw_p, raw_m = _unnormalized_basis(alpha, space)
    return r * raw_p, r * raw_m


def project_2x2(h: np.ndarray, psi_plus: np.ndarray, psi_minus: np.ndarray) -> np.ndarray:
    basis = np.column_stack([psi_plus, psi_minus])
    return basis.conj().T @ h @ basis


def projected_hamiltonian(kind, params: SystemParams, t: float, space: FockSpace | None = None) -> np.ndarray:
    # project on the unnormalized combinations and halve: exact, unlike (1/sqrt 2)^2
    space = space or space_for(params)
    raw_p, raw_m = _unnormalized_basis(params.alpha, space)
    return project_2x2(build_rotated_hamiltonian(kind, params, t, space), raw_p, raw_m) / 2.0


def offdiagonal_residual(kind, params: SystemParams, t: float, space: FockSpace | None = None) -> float:
    """Largest off-diagonal magnitude of the projected Hamiltonian over its largest entry."""
    p = projected_hamiltonian(kind, params, t, space)
    scale = float(np.max(np.abs(p)))
    if scale == 0:
        return 0.0
    return float(max(abs(p[0, 1]), abs(p[1, 0])) / scale)


def verify_offdiagonal(kind, params: SystemParams, k: int, space: FockSpace | None = None) -> float:
    return offdiagonal_residual(kind, params, cf.diag_time(kind, k), space)


def control_time(kind, k: int) -> float:
    """Midpoint between the k-th and (k+1)-th diagonalization times."""
    return cf.diag_time(kind, k) + math.pi / 2.0


def offdiagonal_amplitude(params: SystemParams) -> float:
    """Omega exp(-eta^2/2) |cos 2 eta alpha|, the full-Hamiltonian off-diagonal scale."""
    return params.rabi_ratio * math.exp(-params.eta**2 / 2.0) * abs(math.cos(2.0 * params.eta * params.alpha))


@dataclass(frozen=True)
class DiagonalCheck:
    deviation: float
    mapping: str
    deviations: dict
    numeric: tuple
    closed: tuple
    interaction_scale: float | None


def _relative(num: np.ndarray, ref: np.ndarray) -> float:
    return float(max(abs(num[i] - ref[i]) / max(abs(ref[i]), 1e-300) for i in range(2)))


def verify_diagonal(kind, params: SystemParams, k: int, space: FockSpace | None = None) -> DiagonalCheck:
    """Compare projected diagonal elements with the closed-form energy pair.

    Four assignments are tried: direct (psi+ -> h11, psi- -> h22), swapped,
    and both with the sign of the interaction term reversed.  ``deviation`` is
    the best of them and ``mapping`` names it; ``deviations['direct']`` is the
    primary hypothesis.  ``interaction_scale`` is the least-squares factor by
    which the closed-form interaction term would have to be multiplied to fit
    the numerics (None when that term vanishes).
    """
    kind = HamiltonianKind.parse(kind)
    p = projected_hamiltonian(kind, params, cf.diag_time(kind, k), space)
    num = np.array([p[0, 0].real, p[1, 1].real])
    e = cf.energies(kind, params, k)
    flipped = cf.energies(kind, params, k + 1)
    vib = params.nu_ratio * params.alpha**2
    internal = params.omega_a_ratio * math.exp(-2.0 * params.alpha**2)
    base = np.array([vib - internal, vib + internal])
    inter = np.array([e.h11, e.h22]) - base
    flip_inter = np.array([flipped.h11, flipped.h22]) - base
    candidates = {
        "direct": base + inter,
        "swapped": (base + inter)[::-1],
        "sign-adjusted": base + flip_inter,
        "swapped+sign-adjusted": (base + flip_inter)[::-1],
    }
    devs = {name: _relative(num, ref) for name, ref in candidates.items()}
    best = min(devs, key=lambda name: (devs[name], name != "direct"))
    scale = None
    if float(np.dot(inter, inter)) > 0:
        scale = float(np.dot(num - base, inter) / np.dot(inter, inter))
    return DiagonalCheck(
        deviation=devs[best],
        mapping=best,
        deviations=devs,
        numeric=(float(num[0]), float(num[1])),
        closed=(e.h11, e.h22),
        interaction_scale=scale,
    )


def basis_residual(alpha: float, space: FockSpace) -> float:
    """max(|<psi+|psi->|, | |psi+| - 1 |, | |psi-| - 1 |)."""
    psi_p, psi_m = basis_vectors(alpha, space)
    return float(
        max(
            abs(np.vdot(psi_p, psi_m)),
            abs(np.linalg.norm(psi_p) - 1.0),
            abs(np.linalg.norm(psi_m) - 1.0),
        )
    )


def shift_matrix_element(eta: float, alpha: float, beta: float, sign: int = 1) -> complex:
    """<alpha| exp(i s eta a^dag) exp(i s eta a) |beta> for real alpha, beta."""
    return complex(
        np.exp(1j * sign * eta * (alpha + beta)) * math.exp(-(alpha**2 + beta**2) / 2.0 + alpha * beta)
    )


def operator_theorem_residual(eta: float, alpha: float, beta: float, space: FockSpace) -> float:
    """Deviation of truncated normal-ordered matrix elements from the analytic ones."""
    worst = 0.0
    ca, cb = coherent_vector(alpha, space), coherent_vector(beta, space)
    for sign in (1, -1):
        d, _ = normal_ordered_shift(eta, sign, space)
        numeric = np.vdot(ca, d @ cb)
        worst = max(worst, abs(numeric - shift_matrix_element(eta, alpha, beta, sign)))
    return float(worst)


def truncation_residual(kind, params: SystemParams, t: float) -> float:
    """Change of the projected Hamiltonian when the cutoff is doubled."""
    base = projected_hamiltonian(kind, params, t, space_for(params))
    doubled = projected_hamiltonian(kind, params, t, FockSpace(2 * int(params.fock_dim)))
    return float(np.max(np.abs(base - doubled)))


@dataclass(frozen=True)
class ThetaPrimeRecord:
    k: int
    t: float
    theta_literal: float
    theta_from_energies: float
    gap: float


def theta_prime_consistency(params: SystemParams, k: int) -> ThetaPrimeRecord:
    """Compare the closed-form RWA mixing angle with t (H'22 - H'11) / 2."""
    t = cf.diag_time(RWA, k)
    literal = cf.angles(RWA, params, t, k).theta
    e = cf.energies(RWA, params, k)
    from_energies = t * (e.h22 - e.h11) / 2.0
    return ThetaPrimeRecord(k, t, literal, from_energies, abs(literal - from_energies))


def rwa_step_probability_from_energies(params: SystemParams, k: int) -> float:
    """Ground probability at t'_k when the angle is taken from the energy splitting."""
    rec = theta_prime_consistency(params, k)
    return math.cos(rec.theta_from_energies) ** 2


def count_local_extrema(values) -> int:
    """Number of strict interior local maxima and minima of a sampled curve."""
    v = np.asarray(values, dtype=float)
    d = np.sign(np.diff(v))
    d = d[d != 0]
    return int(np.count_nonzero(d[1:] != d[:-1]))


def concurrence_relation(thetas, alphas) -> dict:
    """Fit the closed-form concurrence against Wootters on the same states.

    Hypotheses f: closed = f(wootters) for f in {identity, square, sqrt}.
    Returns per-hypothesis max residuals and the best one.
    """
    closed, woot = [], []
    for theta in thetas:
        for alpha in alphas:
            closed.append(cf.concurrence_of_angle(float(theta), float(alpha)))
            woot.append(entanglement.wootters(entanglement.density_from_state(float(theta), float(alpha))))
    closed = np.array(closed)
    woot = np.array(woot)
    hypotheses = {
        "closed = wootters": woot,
        "closed = wootters**2": woot**2,
        "closed = sqrt(wootters)": np.sqrt(woot),
    }
    residuals = {name: float(np.max(np.abs(closed - f))) for name, f in hypotheses.items()}
    best = min(residuals, key=residuals.get)
    return {"residuals": residuals, "best": best, "best_residual": residuals[best], "points": int(closed.size)}


def step_index_at(kind, t: float) -> int:
    """Index of the most recent diagonalization time at or before ``t`` (0 before the first)."""
    kind = HamiltonianKind.parse(kind)
    first = cf.diag_time(kind, 0)
    if t < first:
        return 0
    return int(math.floor((t - first) / math.pi + 1e-9))


def _qubit_density(psi: np.ndarray, dim: int) -> np.ndarray:
    blocks = psi.reshape(2, dim)
    return blocks @ blocks.conj().T


EVOLVE_COLUMNS = (
    "t",
    "k",
    "at_diag_time",
    "p_g_numeric",
    "p_g_analytic_rotated",
    "p_g_analytic_lab",
    "c_numeric",
    "c_closed_form",
    "norm_drift",
)


@dataclass
class EvolutionSeries:
    kind: HamiltonianKind
    columns: tuple
    rows: list
    footer: dict


def evolve_and_compare(
    kind,
    params: SystemParams,
    periods: int = 10,
    steps_per_period: int = 400,
    space: FockSpace | None = None,
    samples_per_period: int = 8,
) -> EvolutionSeries:
    """Propagate |e, alpha> in the rotated frame and compare with the closed forms.

    ``p_g_numeric`` is the rotated-frame ground probability.  The analytic
    rotated-frame state cos(theta)|e,alpha> + sin(theta)|g,-alpha> has ground
    probability sin^2(theta) (``p_g_analytic_rotated``); the lab-frame state
    has cos^2(theta) (``p_g_analytic_lab``).  Concurrence is frame independent.
    Samples are taken every ``steps_per_period / samples_per_period`` steps,
    which includes every diagonalization time when that stride divides a
    quarter period.
    """
    kind = HamiltonianKind.parse(kind)
    space = space or space_for(params)
    if periods < 1 or steps_per_period < 1:
        raise ValueError("periods and steps_per_period must be >= 1")
    if samples_per_period % 4 or steps_per_period % samples_per_period:
        raise ValueError("samples_per_period must be a multiple of 4 dividing steps_per_period")
    dim = space.dim
    psi0 = product_state(np.zeros(dim), coherent_vector(params.alpha, space))
    dt = 2.0 * math.pi / steps_per_period
    stride = steps_per_period // samples_per_period
    total = periods * steps_per_period

    def hamiltonian_at(t):
        return build_rotated_hamiltonian(kind, params, t, space)

    def row(j, psi):
        t = j * dt
        k = step_index_at(kind, t)
        turns = (t - cf.diag_time(kind, 0)) / math.pi
        at_diag = int(turns > -1e-9 and abs(turns - round(turns)) < 1e-9)
        rho_q = _qubit_density(psi, dim)
        purity = float(np.real(np.trace(rho_q @ rho_q)))
        theta = cf.angles(kind, params, t, k).theta
        norm_drift = abs(float(np.linalg.norm(psi)) - 1.0)
        if norm_drift > 1e-8:
            raise PropagationError(f"norm drift {norm_drift:.3e} at t={t!r} exceeds 1e-8")
        return [
            t,
            k,
            at_diag,
            float(rho_q[0, 0].real),
            math.sin(theta) ** 2,
            cf.ground_probability(kind, params, t, k),
            math.sqrt(max(0.0, 2.0 * (1.0 - purity))),
            cf.concurrence_closed_form(kind, params, t, k),
            norm_drift,
        ]

    rows = [row(0, psi0)]
    for j, psi in enumerate(propagate(hamiltonian_at, psi0, 0.0, dt, total, steps_per_period), start=1):
        if j % stride == 0:
            rows.append(row(j, psi))
    arr = np.array([[float(x) for x in r] for r in rows])
    col = {name: i for i, name in enumerate(EVOLVE_COLUMNS)}
    footer = {
        "frame": "rotated (numeric and p_g_analytic_rotated); lab (p_g_analytic_lab)",
        "max_abs_dev_p_g_rotated": float(np.max(np.abs(arr[:, col["p_g_numeric"]] - arr[:, col["p_g_analytic_rotated"]]))),
        "max_abs_dev_p_g_lab": float(np.max(np.abs(arr[:, col["p_g_numeric"]] - arr[:, col["p_g_analytic_lab"]]))),
        "max_abs_dev_concurrence": float(np.max(np.abs(arr[:, col["c_numeric"]] - arr[:, col["c_closed_form"]]))),
        "max_norm_drift": float(np.max(arr[:, col["norm_drift"]])),
    }
    return EvolutionSeries(kind, EVOLVE_COLUMNS, rows, footer)


def step_convergence(
    kind,
    params: SystemParams,
    periods: int = 1,
    steps_per_period: int = 400,
    space: FockSpace | None = None,
) -> dict:
    """Observed order of the midpoint rule from runs with n, 2n and 4n steps.

    Errors are estimated as ||psi_n - psi_2n|| and ||psi_2n - psi_4n||; their
    ratio tends to 4 for a second-order scheme.
    """
    kind = HamiltonianKind.parse(kind)
    space = space or space_for(params)
    psi0 = product_state(np.zeros(space.dim), coherent_vector(params.alpha, space))
    t1 = 2.0 * math.pi * periods

    def hamiltonian_at(t):
        return build_rotated_hamiltonian(kind, params, t, space)

    finals = [
        evolve(hamiltonian_at, psi0, 0.0, t1, m * periods * steps_per_period, period=2.0 * math.pi)
        for m in (1, 2, 4)
    ]
    coarse = float(np.linalg.norm(finals[0] - finals[1]))
    fine = float(np.linalg.norm(finals[1] - finals[2]))
    return {"error_coarse": coarse, "error_fine": fine, "ratio": coarse / fine}


# ---------------------------------------------------------------------------
# validation report


def _clean(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, HamiltonianKind):
        return value.value
    return value


@dataclass
class ValidationReport:
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, check, params, residual, tolerance, hard=True, comparison="le", detail=None):
        """Record a check; it passes when residual <= tolerance (or >= for comparison='ge')."""
        residual = float(residual)
        passed = residual <= tolerance if comparison == "le" else residual >= tolerance
        rec = {
            "check": check,
            "params": {k: _clean(v) for k, v in sorted(params.items())},
            "residual": residual,
            "tolerance": float(tolerance),
            "comparison": comparison,
            "hard": bool(hard),
            "pass": bool(passed),
        }
        if detail:
            rec["detail"] = {k: _clean(v) for k, v in sorted(detail.items())}
        self.records.append(rec)
        return rec

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def hard_failures(self) -> list:
        return [r for r in self.records if r["hard"] and not r["pass"]]

    def summary(self) -> dict:
        hard = [r for r in self.records if r["hard"]]
        families = sorted({r["check"] for r in self.records})
        return {
            "checks": len(self.records),
            "families": families,
            "hard": len(hard),
            "hard_passed": sum(r["pass"] for r in hard),
            "hard_failed": len(self.hard_failures),
            "soft": len(self.records) - len(hard),
        }

    def sorted_records(self) -> list:
        return sorted(self.records, key=lambda r: (r["check"], json.dumps(r["params"], sort_keys=True)))

    def to_dict(self) -> dict:
        return {"summary": self.summary(), "records": self.sorted_records(), "notes": list(self.notes)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def exit_line(self) -> str:
        s = self.summary()
        status = "PASS" if not s["hard_failed"] else "FAIL"
        failing = sorted({r["check"] for r in self.hard_failures})
        tail = f" failing: {', '.join(failing)}" if failing else ""
        return f"validate {status}: {s['hard_passed']}/{s['hard']} hard checks passed, {s['soft']} soft findings.{tail}"


@dataclass(frozen=True)
class ValidationGrid:
    base: SystemParams = SystemParams()
    etas: tuple = DEFAULT_ETAS
    alphas: tuple = DEFAULT_ALPHAS
    k_max: int = 5
    control_rabi_ratio: float = 0.1
    periods: int = 10
    steps_per_period: int = 400


def record_concurrence_relation(report: ValidationReport, points: int = 50) -> dict:
    """Fit the closed-form concurrence against Wootters on a points x points grid and log it."""
    thetas = np.linspace(0.0, math.pi / 2, points)
    alphas = np.linspace(0.0, 2.0, points)
    rel = concurrence_relation(thetas, alphas)
    grid_name = f"{points}x{points}"
    for name, res in sorted(rel["residuals"].items()):
        report.add("concurrence_relation", {"hypothesis": name, "grid": grid_name}, res, 1e-9, hard=False)
    meaning = {
        "closed = wootters": "the Wootters concurrence itself",
        "closed = wootters**2": "the tangle (squared Wootters concurrence)",
        "closed = sqrt(wootters)": "the square root of the Wootters concurrence",
    }[rel["best"]]
    verdict = "certified" if rel["best_residual"] < 1e-9 else "NOT certified (residual above 1e-9)"
    report.note(
        f"concurrence relation: best hypothesis '{rel['best']}' with max residual "
        f"{rel['best_residual']:.3e} over {rel['points']} (theta, alpha) points, {verdict}; "
        f"the closed form is {meaning} of the evolved state."
    )
    return rel


def run_validation(grid: ValidationGrid = ValidationGrid(), dynamics: bool = True) -> ValidationReport:
    """Run every oracle check family over the grid and collect a report."""
    report = ValidationReport()
    base = grid.base
    cutoff = int(base.fock_dim)
    for alpha in grid.alphas:
        p = base.replace(alpha=alpha)
        p.require_cutoff()
    space = FockSpace(cutoff)

    report.note(
        "Eigenvector claim is tested as a 2x2 projection statement: vanishing off-diagonal "
        "plus matching diagonal elements in the basis psi+/-; exact eigenvectorhood on the "
        "full product space is not expected."
    )
    report.note(
        "Product ordering is internal (x) motional with the ground block first; "
        "sigma_z = |e><e| - |g><g|."
    )

    for alpha in grid.alphas:
        report.add("basis_orthonormality", {"alpha": alpha, "N": cutoff}, basis_residual(alpha, space), 1e-10)

    for eta in grid.etas:
        for alpha in grid.alphas:
            report.add(
                "operator_theorem",
                {"eta": eta, "alpha": alpha, "beta": -alpha, "N": cutoff},
                operator_theorem_residual(eta, alpha, -alpha, space),
                1e-10,
            )

    rot_times = (0.0, 1.3, math.pi / 2)
    for eta in grid.etas:
        for alpha in grid.alphas:
            p = base.replace(eta=eta, alpha=alpha)
            for t in rot_times:
                pt = {"eta": eta, "alpha": alpha, "t": t, "N": cutoff}
                report.add("rotation_equivalence", pt, rotation_residual(p, t, space), 1e-10)
                report.add(
                    "rotation_equivalence_literal_half_turn",
                    pt,
                    rotation_residual(p, t, space, LITERAL_ROTATION),
                    1e-10,
                    hard=False,
                )
    report.note(
        "Rotation check uses the quarter turn exp(-i pi Y/4) with Y = [[0,-i],[i,0]] in (g,e) order, "
        "which maps sigma_z -> -sigma_x and sigma_x -> sigma_z. The operator exp(i pi sigma_y/2) read "
        "literally is i*sigma_y, a half turn that negates both; its residuals are recorded as soft "
        "findings (rotation_equivalence_literal_half_turn)."
    )

    scale_notes = {}
    for kind in (FULL, RWA):
        for eta in grid.etas:
            for alpha in grid.alphas:
                p = base.replace(eta=eta, alpha=alpha)
                for k in range(grid.k_max + 1):
                    pt = {"kind": kind.value, "eta": eta, "alpha": alpha, "k": k, "N": cutoff}
                    report.add("offdiagonal", pt, verify_offdiagonal(kind, p, k, space), 1e-8)
                    d = verify_diagonal(kind, p, k, space)
                    report.add(
                        "diagonal",
                        pt,
                        d.deviation,
                        1e-6,
                        detail={
                            "mapping": d.mapping,
                            "deviation_direct": d.deviations["direct"],
                            "numeric_h11": d.numeric[0],
                            "numeric_h22": d.numeric[1],
                            "closed_h11": d.closed[0],
                            "closed_h22": d.closed[1],
                            "interaction_scale": d.interaction_scale,
                        },
                    )
                    if d.interaction_scale is not None:
                        scale_notes.setdefault(kind.value, []).append(d.interaction_scale)
                    # negative control at the midpoint between diagonalization times
                    for label, rabi in (("config", base.rabi_ratio), ("control", grid.control_rabi_ratio)):
                        pc = p.replace(rabi_ratio=rabi)
                        amp = offdiagonal_amplitude(pc)
                        applies = kind is FULL and amp >= 1e-2
                        report.add(
                            "offdiagonal_negative_control",
                            {**pt, "rabi_ratio": rabi, "t": control_time(kind, k), "drive": label},
                            offdiagonal_residual(kind, pc, control_time(kind, k), space),
                            1e-3,
                            hard=applies,
                            comparison="ge",
                            detail={"amplitude": amp},
                        )
    for kind_name, scales in sorted(scale_notes.items()):
        report.note(
            f"diagonal[{kind_name}]: fitted factor on the closed-form interaction term ranges over "
            f"[{min(scales):.12g}, {max(scales):.12g}] (1 means the closed-form energies are reproduced)."
        )

    for eta in grid.etas:
        for alpha in grid.alphas:
            p = base.replace(eta=eta, alpha=alpha)
            for kind in (FULL, RWA):
                t = cf.diag_time(kind, 1)
                report.add(
                    "truncation_convergence",
                    {"kind": kind.value, "eta": eta, "alpha": alpha, "t": t, "N": cutoff, "N2": 2 * cutoff},
                    truncation_residual(kind, p, t),
                    1e-9,
                )

    # soft findings
    for eta in grid.etas:
        for alpha in grid.alphas:
            p = base.replace(eta=eta, alpha=alpha)
            for k in range(grid.k_max + 1):
                rec = theta_prime_consistency(p, k)
                report.add(
                    "theta_prime_consistency",
                    {"eta": eta, "alpha": alpha, "k": k},
                    rec.gap,
                    0.0,
                    hard=False,
                    detail={"t": rec.t, "theta_literal": rec.theta_literal, "theta_from_energies": rec.theta_from_energies},
                )
    reading = compare_theta_prime_readings(base)
    report.note(
        f"theta' readings at k={reading['k']}, alpha in [1.5, 2]: literal (parity inside the exponent) "
        f"gives {reading['extrema_literal']} local extrema of P'_g, energy-derived gives "
        f"{reading['extrema_from_energies']}; the reading that reproduces the high-frequency odd-k "
        f"oscillation is: {reading['reproduces_figures']}."
    )

    record_concurrence_relation(report)

    if dynamics:
        p = base
        p.require_cutoff()
        for kind in (FULL, RWA):
            series = evolve_and_compare(kind, p, grid.periods, grid.steps_per_period, space)
            pt = {"kind": kind.value, "eta": p.eta, "alpha": p.alpha, "periods": grid.periods,
                  "steps_per_period": grid.steps_per_period, "N": cutoff}
            report.add("norm_conservation", pt, series.footer["max_norm_drift"], 1e-9)
            for key in ("max_abs_dev_p_g_rotated", "max_abs_dev_p_g_lab", "max_abs_dev_concurrence"):
                report.add("continuum_time_deviation", {**pt, "quantity": key}, series.footer[key], 0.0, hard=False)
    return report


def compare_theta_prime_readings(params: SystemParams, k: int = 3, points: int = 2001) -> dict:
    """Count extrema of P'_g(alpha) on [1.5, 2] at odd k under both angle readings."""
    alphas = np.linspace(1.5, 2.0, points)
    literal = [cf.ground_probability_at_step(RWA, params.replace(alpha=float(a)), k) for a in alphas]
    derived = [rwa_step_probability_from_energies(params.replace(alpha=float(a)), k) for a in alphas]
    n_lit, n_der = count_local_extrema(literal), count_local_extrema(derived)
    if n_lit >= 3 and n_der < 3:
        winner = "literal"
    elif n_der >= 3 and n_lit < 3:
        winner = "from_energies"
    else:
        winner = "both" if n_lit >= 3 else "neither"
    return {"k": k, "extrema_literal": n_lit, "extrema_from_energies": n_der, "reproduces_figures": winner}
