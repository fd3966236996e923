import json
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ionrwa import closed_forms as cf
from ionrwa import oracle
from ionrwa.closed_forms import FULL, RWA, SystemParams, minimal_cutoff
from ionrwa.errors import CutoffError
from ionrwa.fock import FockSpace, coherent_vector, evolve, number_operator

N96 = FockSpace(96)
N64 = FockSpace(64)


def test_uncoupled_hamiltonian_block_structure():
    p = SystemParams(rabi_ratio=0.0, eta=0.5, alpha=1.0, fock_dim=20)
    space = FockSpace(20)
    expected = 0.01 * np.kron(np.eye(2), number_operator(space)) - np.kron(oracle.SX, np.eye(space.dim))
    for kind in (FULL, RWA):
        for t in (0.0, 0.4, 2.0):
            assert np.array_equal(oracle.build_rotated_hamiltonian(kind, p, t, space), expected)


def test_full_at_zero_eta_is_cosine_sigma_z():
    p = SystemParams(eta=0.0, alpha=1.0, fock_dim=20)
    space = FockSpace(20)
    static = oracle.build_rotated_hamiltonian(FULL, p.replace(rabi_ratio=0.0), 0.0, space)
    for t in (0.0, 0.9, 2.5):
        inter = oracle.build_rotated_hamiltonian(FULL, p, t, space) - static
        assert np.max(np.abs(inter - 1e-3 * math.cos(t) * np.kron(oracle.SZ, np.eye(space.dim)))) < 1e-15


def test_rwa_coupling_is_jaynes_cummings_at_zero_eta():
    p = SystemParams(eta=0.0, alpha=1.0, fock_dim=10)
    space = FockSpace(10)
    static = oracle.build_rotated_hamiltonian(RWA, p.replace(rabi_ratio=0.0), 0.0, space)
    inter = oracle.build_rotated_hamiltonian(RWA, p, 0.7, space) - static
    expected = 0.5e-3 * (np.exp(0.7j) * np.kron(oracle.SM, np.eye(11)) + np.exp(-0.7j) * np.kron(oracle.SP, np.eye(11)))
    assert np.max(np.abs(inter - expected)) < 1e-15


@pytest.mark.parametrize("kind", [FULL, RWA])
def test_periodicity(kind):
    p = SystemParams(eta=0.5, alpha=1.0, fock_dim=30)
    space = FockSpace(30)
    h0 = oracle.build_rotated_hamiltonian(kind, p, 0.8, space)
    h1 = oracle.build_rotated_hamiltonian(kind, p, 0.8 + 2 * math.pi, space)
    assert np.max(np.abs(h0 - h1)) <= 1e-15 * np.max(np.abs(h0))


def test_rotation_equivalence_spot():
    p = SystemParams(eta=0.5, alpha=1.0, fock_dim=64)
    assert oracle.rotation_residual(p, 1.3, N64) < 1e-10


def test_literal_half_turn_does_not_map_frames():
    p = SystemParams(eta=0.5, alpha=1.0, fock_dim=64)
    assert oracle.rotation_residual(p, 1.3, N64, oracle.LITERAL_ROTATION) > 0.5
    # the literal operator is i*sigma_y
    y = oracle.SY
    literal = math.cos(math.pi / 2) * np.eye(2) + 1j * math.sin(math.pi / 2) * y
    assert np.allclose(literal, oracle.LITERAL_ROTATION, atol=1e-16)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 2.0), st.floats(0.0, 20.0), st.floats(1e-4, 0.1))
def test_rotation_equivalence_random(eta, alpha, t, rabi):
    p = SystemParams(eta=eta, alpha=alpha, rabi_ratio=rabi, fock_dim=48)
    assert oracle.rotation_residual(p, t, FockSpace(48)) < 1e-10


def test_uncoupled_lab_spectrum():
    p = SystemParams(rabi_ratio=0.0, fock_dim=12)
    w = np.linalg.eigvalsh(oracle.build_lab_hamiltonian(p, 0.3, FockSpace(12)))
    expected = sorted([n * 0.01 + s for n in range(13) for s in (-1.0, 1.0)])
    assert np.allclose(w, expected, atol=1e-14)


def test_basis_vectors():
    psi_p, psi_m = oracle.basis_vectors(0.0, N96)
    assert np.vdot(psi_p, psi_m) == 0
    assert oracle.basis_residual(1.0, N64) < 1e-10
    for alpha in (0.5, 1.0, 2.0):
        psi_p, psi_m = oracle.basis_vectors(alpha, N96)
        assert abs(np.linalg.norm(psi_p) - 1) < 1e-10
        assert abs(np.linalg.norm(psi_m) - 1) < 1e-10
    with pytest.raises(CutoffError):
        oracle.basis_vectors(2.0, FockSpace(20))


def test_projection_uncoupled_ground_motion():
    p = SystemParams(rabi_ratio=0.0, alpha=0.0, fock_dim=30)
    m = oracle.projected_hamiltonian(FULL, p, 0.0, FockSpace(30))
    assert np.allclose(m, np.diag([-1.0, 1.0]), atol=1e-16)
    d = oracle.verify_diagonal(FULL, p, 0, FockSpace(30))
    assert d.numeric == (-1.0, 1.0)
    assert d.mapping == "direct" and d.deviation == 0.0


@pytest.mark.parametrize("eta", [0.0, 0.5, 1.0])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_full_offdiagonal_vanishes_at_quarter_period(eta, alpha):
    p = SystemParams(eta=eta, alpha=alpha)
    assert oracle.offdiagonal_residual(FULL, p, math.pi / 2, N96) < 1e-8


@pytest.mark.parametrize("eta,alpha", [(0.5, 1.0), (0.25, 0.5), (1.0, 2.0), (0.1, 0.5)])
def test_offdiagonal_at_zero_time_tracks_amplitude(eta, alpha):
    p = SystemParams(eta=eta, alpha=alpha)
    h12 = oracle.projected_hamiltonian(FULL, p, 0.0, N96)[0, 1]
    expected = 1e-3 * math.exp(-eta * eta / 2) * math.cos(2 * eta * alpha)
    assert abs(h12 - expected) < 1e-15


def test_verify_offdiagonal_examples():
    p = SystemParams(eta=0.5, alpha=1.0)
    for k in range(6):
        assert oracle.verify_offdiagonal(FULL, p, k, N96) < 1e-8
    assert oracle.verify_offdiagonal(RWA, p, 0, N96) < 1e-8
    control = SystemParams(eta=0.1, alpha=0.5)
    assert oracle.offdiagonal_residual(FULL, control, 0.0, N96) > 1e-3


def test_rwa_diagonal_matches_closed_form():
    p = SystemParams(eta=0.5, alpha=1.0)
    d = oracle.verify_diagonal(RWA, p, 1, N96)
    assert d.deviation < 1e-6
    assert d.mapping == "direct"
    assert d.interaction_scale == pytest.approx(1.0, abs=1e-6)


@pytest.mark.xfail(strict=True, reason="full closed-form interaction shift is twice the numeric one")
def test_full_diagonal_matches_closed_form():
    p = SystemParams(eta=0.5, alpha=1.0)
    assert oracle.verify_diagonal(FULL, p, 0, N96).deviation < 1e-6


@pytest.mark.parametrize("k", [0, 1, 4])
def test_full_diagonal_interaction_scale_is_one_half(k):
    p = SystemParams(eta=0.5, alpha=1.0)
    d = oracle.verify_diagonal(FULL, p, k, N96)
    assert d.interaction_scale == pytest.approx(0.5, abs=1e-9)
    assert d.deviations["direct"] > 1e-3
    # with the interaction term halved the match is at roundoff
    e = cf.energies(FULL, p, k)
    base = 0.01 - math.exp(-2), 0.01 + math.exp(-2)
    halved = [b + (x - b) / 2 for b, x in zip(base, (e.h11, e.h22))]
    assert max(abs(n - h) / abs(h) for n, h in zip(d.numeric, halved)) < 1e-9


def test_operator_theorem_and_truncation():
    for eta in (0.25, 1.0):
        assert oracle.operator_theorem_residual(eta, 2.0, -2.0, N96) < 1e-10
        p = SystemParams(eta=eta, alpha=2.0)
        assert oracle.truncation_residual(FULL, p, 1.0) < 1e-9


def test_shift_matrix_element_mpmath():
    eta, a, b = 0.4, 1.2, -0.3
    val = oracle.shift_matrix_element(eta, a, b, -1)
    ref = mp.exp(-1j * mp.mpf(eta) * (a + b)) * mp.exp(-(mp.mpf(a) - b) ** 2 / 2)
    assert abs(val - complex(ref)) < 1e-15


def test_theta_prime_examples():
    zero = oracle.theta_prime_consistency(SystemParams(rabi_ratio=0.0, alpha=1.0), 3)
    assert zero.gap == 0.0
    assert zero.theta_literal == pytest.approx(3 * math.pi * math.exp(-2), rel=1e-15)
    p = SystemParams(eta=0.0, alpha=1.0)
    rec = oracle.theta_prime_consistency(p, 1)
    expected = float(mp.pi * (mp.mpf("1e-3") * mp.e**2 + mp.mpf("0.5e-3") * mp.e ** -2))
    assert rec.gap == pytest.approx(expected, abs=1e-12)
    for k in (0, 2, 4):
        rec = oracle.theta_prime_consistency(p, k)
        assert rec.gap == pytest.approx(rec.t * 1e-3 * math.exp(-2) / 2, abs=1e-12)


def test_count_local_extrema():
    assert oracle.count_local_extrema([0, 1, 2, 3]) == 0
    assert oracle.count_local_extrema([0, 1, 0, 1, 0]) == 3
    assert oracle.count_local_extrema([0, 1, 1, 0]) == 1
    assert oracle.count_local_extrema(np.sin(np.linspace(0, 10 * math.pi, 1001))) == 10


def test_concurrence_relation_small_grid():
    rel = oracle.concurrence_relation(np.linspace(0, 1.5, 7), np.linspace(0, 2, 7))
    assert rel["best"] == "closed = wootters**2"
    assert rel["best_residual"] < 1e-12
    assert rel["residuals"]["closed = wootters"] > 0.1


def test_step_index():
    assert oracle.step_index_at(FULL, 0.0) == 0
    assert oracle.step_index_at(FULL, math.pi / 2) == 0
    assert oracle.step_index_at(FULL, 1.5 * math.pi) == 1
    assert oracle.step_index_at(RWA, 2 * math.pi) == 2
    assert oracle.step_index_at(RWA, 2 * math.pi - 1e-3) == 1


def test_evolve_uncoupled_never_decays():
    p = SystemParams(rabi_ratio=0.0, omega_a_ratio=0.0, alpha=1.0, fock_dim=31)
    s = oracle.evolve_and_compare(FULL, p, periods=1, steps_per_period=64)
    col = s.columns.index("p_g_numeric")
    assert all(abs(r[col]) < 1e-15 for r in s.rows)


def test_evolve_initial_row_and_frames():
    p = SystemParams(alpha=1.0, fock_dim=31)
    s = oracle.evolve_and_compare(FULL, p, periods=1, steps_per_period=64)
    row = dict(zip(s.columns, s.rows[0]))
    assert row["t"] == 0.0 and row["p_g_numeric"] == 0.0
    assert row["p_g_analytic_rotated"] == 0.0 and row["p_g_analytic_lab"] == 1.0
    assert row["c_numeric"] == 0.0
    diag = [dict(zip(s.columns, r)) for r in s.rows if r[s.columns.index("at_diag_time")]]
    assert [round(d["t"], 12) for d in diag] == [round(math.pi / 2, 12), round(1.5 * math.pi, 12)]
    for r in s.rows:
        d = dict(zip(s.columns, r))
        assert 0.0 <= d["p_g_numeric"] <= 1.0 + 1e-12
        assert 0.0 <= d["c_numeric"] <= 1.0 + 1e-12
    assert s.footer["max_norm_drift"] < 1e-12


def test_evolve_rejects_bad_sampling():
    with pytest.raises(ValueError):
        oracle.evolve_and_compare(FULL, SystemParams(fock_dim=31), periods=1, steps_per_period=64, samples_per_period=6)


def test_step_convergence_small_cutoff():
    res = oracle.step_convergence(FULL, SystemParams(eta=0.5, fock_dim=31), periods=1, steps_per_period=100)
    assert 3.5 <= res["ratio"] <= 4.5


def test_report_serialization_is_sorted_and_stable():
    rep = oracle.ValidationReport()
    rep.add("b", {"x": 2.0}, 1e-12, 1e-10)
    rep.add("a", {"x": 1.0}, 1.0, 1e-10, hard=False)
    rep.add("b", {"x": 1.0}, 5e-3, 1e-3, comparison="ge")
    doc = json.loads(rep.to_json())
    assert [(r["check"], r["params"]["x"]) for r in doc["records"]] == [("a", 1.0), ("b", 1.0), ("b", 2.0)]
    assert doc["summary"]["hard_failed"] == 0 and doc["summary"]["soft"] == 1
    assert rep.to_json() == rep.to_json()
    assert rep.exit_line().startswith("validate PASS")
    rep.add("c", {}, 1.0, 0.5)
    assert rep.exit_line().endswith("failing: c")


def test_small_validation_run():
    grid = oracle.ValidationGrid(
        base=SystemParams(fock_dim=44), etas=(0.0, 0.5), alphas=(0.5, 1.0), k_max=1, periods=1, steps_per_period=64
    )
    rep = oracle.run_validation(grid)
    fams = set(rep.summary()["families"])
    assert {"basis_orthonormality", "offdiagonal", "diagonal", "rotation_equivalence"} <= fams
    assert {r["check"] for r in rep.hard_failures} == {"diagonal"}
    assert all(r["params"]["kind"] == "full" for r in rep.hard_failures)
    assert any("wootters**2" in n for n in rep.notes)
    assert oracle.run_validation(grid).to_json() == rep.to_json()


def test_full_propagation_self_convergence():
    p = SystemParams(eta=0.5, alpha=0.5)
    space = FockSpace(minimal_cutoff(0.5))
    psi0 = oracle.product_state(np.zeros(space.dim), coherent_vector(0.5, space))

    def h(t):
        return oracle.build_rotated_hamiltonian(FULL, p, t, space)

    coarse, fine, ref = (evolve(h, psi0, 0.0, 2 * math.pi, n) for n in (400, 800, 6400))
    ratio = np.linalg.norm(coarse - ref) / np.linalg.norm(fine - ref)
    assert 3.5 <= ratio <= 4.5
