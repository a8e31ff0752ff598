"""Acceptance suite: one check per release criterion, at pinned tolerances.

Run under pytest (one test per criterion) or directly:

    python tests/test_acceptance.py

which prints one PASS/FAIL line per criterion and exits nonzero on any
failure.
"""

import io
import time

import numpy as np
import scipy.linalg

from vspin import (
    SpinParameters,
    ThermalSpec,
    build_static_hamiltonian,
    closed_form_eigensystem,
    compile_cnot,
    compile_single_qubit_rotation,
    convergence_study,
    diagonalize,
    high_temperature_coefficients,
    high_temperature_state,
    parse_density_matrix,
    projector,
    projector_product,
    rwa_sweep,
    single_frequency_propagator,
    temporal_average,
    truth_table,
    virtual_spin_components,
)
from vspin.cli import run_command

PARAMS = SpinParameters(omega0=0.1, omegaQ=1.0, eta=0.5, gamma=1.0, h_rf=0.0)
CLI_FLAGS = ["--omega0", "0.1", "--omegaQ", "1", "--eta", "0.5"]


def proj(m, n):
    return projector(m, n).matrix


def criterion_1_projector_algebra():
    """Exhaustive product rule P_kl P_mn = delta_lm P_kn; completeness."""
    start = time.perf_counter()
    for k in range(1, 5):
        for l in range(1, 5):
            for m in range(1, 5):
                for n in range(1, 5):
                    got = projector_product(projector(k, l), projector(m, n))
                    expected = proj(k, n) if l == m else np.zeros((4, 4))
                    assert np.array_equal(got, expected), (k, l, m, n)
    total = sum(proj(m, m) for m in range(1, 5))
    assert np.array_equal(total, np.eye(4, dtype=complex))
    elapsed = time.perf_counter() - start
    assert elapsed < 0.1, f"runtime {elapsed:.3f}s exceeds 0.1s"
    return f"256 products exact, completeness exact, {elapsed * 1e3:.0f} ms"


def criterion_2_eigensystem_cross_check():
    """1000 random draws: closed form vs numerical diagonalization."""
    start = time.perf_counter()
    rng = np.random.default_rng(2026)
    worst_energy = 0.0
    worst_overlap = 0.0
    for _ in range(1000):
        c = rng.uniform(0.01, 0.3)
        eta = rng.choice([-1.0, 1.0]) * rng.uniform(0.01, 1.0)
        p = SpinParameters(omega0=c, omegaQ=1.0, eta=eta)
        cf = closed_form_eigensystem(p)
        num = diagonalize(build_static_hamiltonian(p), scale=p.omegaQ)
        rel = np.max(np.abs(cf.energies - num.energies) / np.abs(num.energies))
        worst_energy = max(worst_energy, rel)
        overlaps = np.abs(np.sum(cf.states.conj() * num.states, axis=0))
        worst_overlap = max(worst_overlap, float(np.max(1.0 - overlaps)))
    elapsed = time.perf_counter() - start
    assert worst_energy <= 1e-10, worst_energy
    assert worst_overlap <= 1e-10, worst_overlap
    assert elapsed < 1.0, f"runtime {elapsed:.3f}s exceeds 1s"
    return (
        f"max rel energy err {worst_energy:.2e}, max 1-overlap {worst_overlap:.2e},"
        f" {elapsed * 1e3:.0f} ms"
    )


def criterion_3_pulse_identities():
    """Composed pi-pulse products and the two CNOT projector forms."""
    start = time.perf_counter()
    e = closed_form_eigensystem(PARAMS)
    v12 = single_frequency_propagator(e, (1, 2), "Y", 0.0, np.pi)
    v23 = single_frequency_propagator(e, (2, 3), "Y", 0.0, np.pi)
    v1_expected = proj(4, 4) + proj(2, 1) + proj(1, 3) + proj(3, 2)
    v2_expected = proj(4, 4) - proj(1, 2) + proj(3, 1) - proj(2, 3)
    err_v1 = np.max(np.abs(v12 @ v23 - v1_expected))
    err_v2 = np.max(np.abs(v23 @ v12 - v2_expected))
    assert err_v1 <= 1e-12, err_v1
    assert err_v2 <= 1e-12, err_v2
    cnot_r = proj(3, 3) + proj(4, 4) + proj(2, 1) - proj(1, 2)
    cnot_s = proj(2, 2) + proj(4, 4) + proj(3, 1) - proj(1, 3)
    err_r = np.max(np.abs(single_frequency_propagator(e, (1, 2), "Y", 0.0, np.pi) - cnot_r))
    err_s = np.max(np.abs(single_frequency_propagator(e, (1, 3), "Y", 0.0, np.pi) - cnot_s))
    assert err_r <= 1e-12, err_r
    assert err_s <= 1e-12, err_s
    elapsed = time.perf_counter() - start
    assert elapsed < 0.1, f"runtime {elapsed:.3f}s exceeds 0.1s"
    return (
        f"permutation products {max(err_v1, err_v2):.1e}, CNOT forms"
        f" {max(err_r, err_s):.1e}, {elapsed * 1e3:.0f} ms"
    )


def criterion_4_truth_tables():
    """Both CNOT truth tables, with signs, invariant under global phase."""
    start = time.perf_counter()
    e = closed_form_eigensystem(PARAMS)
    expected = {
        "R": [("11", "10", 1.0), ("10", "11", -1.0), ("01", "01", 1.0), ("00", "00", 1.0)],
        "S": [("11", "01", 1.0), ("10", "10", 1.0), ("01", "11", -1.0), ("00", "00", 1.0)],
    }
    for control, want in expected.items():
        _, u = compile_cnot(e, PARAMS, control)
        for phase in (1.0, np.exp(0.9j), np.exp(-2.3j)):
            rows = truth_table(phase * u)
            got = [(r.input_bits, r.output_bits, r.phase) for r in rows]
            for (gi, go, gp), (wi, wo, wp) in zip(got, want):
                assert (gi, go) == (wi, wo), (control, got)
                assert abs(gp - wp) <= 1e-10, (control, gp, wp)
    elapsed = time.perf_counter() - start
    assert elapsed < 0.1, f"runtime {elapsed:.3f}s exceeds 0.1s"
    return f"both tables exact incl. -1 rows, phase-invariant, {elapsed * 1e3:.0f} ms"


def criterion_5_rotation_compiler():
    """Compiled rotations equal exp(-i phi G); additivity; spinor sign."""
    start = time.perf_counter()
    e = closed_form_eigensystem(PARAMS)
    components = virtual_spin_components()
    rng = np.random.default_rng(5)
    worst = 0.0
    angles = rng.uniform(-4 * np.pi, 4 * np.pi, size=100)
    for target in ("R", "S"):
        for axis in ("X", "Y"):
            generator = components[target + axis.lower()]
            for phi in angles:
                _, u = compile_single_qubit_rotation(e, PARAMS, target, phi, axis)
                ref = scipy.linalg.expm(-1j * phi * generator)
                worst = max(worst, float(np.max(np.abs(u - ref))))
    assert worst <= 1e-12, worst
    worst_add = 0.0
    for phi1, phi2 in rng.uniform(-2 * np.pi, 2 * np.pi, size=(20, 2)):
        _, ua = compile_single_qubit_rotation(e, PARAMS, "S", phi1, "Y")
        _, ub = compile_single_qubit_rotation(e, PARAMS, "S", phi2, "Y")
        _, uc = compile_single_qubit_rotation(e, PARAMS, "S", phi1 + phi2, "Y")
        worst_add = max(worst_add, float(np.max(np.abs(ua @ ub - uc))))
    assert worst_add <= 1e-12, worst_add
    _, u2pi = compile_single_qubit_rotation(e, PARAMS, "R", 2 * np.pi, "Y")
    sign_err = float(np.max(np.abs(u2pi + np.eye(4))))
    assert sign_err <= 1e-12, sign_err
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"runtime {elapsed:.3f}s exceeds 1s"
    return (
        f"400 compiled rotations vs expm {worst:.1e}, additivity {worst_add:.1e},"
        f" 2pi -> -1 {sign_err:.1e}, {elapsed * 1e3:.0f} ms"
    )


def criterion_6_pseudo_pure():
    """Temporal averaging of the first-order thermal state at beta_scale 1e-4."""
    start = time.perf_counter()
    e = closed_form_eigensystem(PARAMS)
    spec = ThermalSpec(beta_scale=1e-4)
    lam = high_temperature_coefficients(e, spec)
    rho_pp, alpha, beta = temporal_average(high_temperature_state(e, spec), e)
    off = rho_pp - np.diag(np.diag(rho_pp))
    off_err = float(np.max(np.abs(off)))
    assert off_err <= 1e-14, off_err
    populations = np.real(np.diag(rho_pp))
    pop_err = float(np.max(np.abs(populations[:3] - np.mean(populations[:3]))))
    assert pop_err <= 1e-14, pop_err
    lam_mean = float(np.mean(lam[:3]))
    alpha_err = abs(alpha - (1.0 + lam_mean))
    beta_err = abs(beta - (lam[3] - lam_mean))
    assert alpha_err <= 1e-12, alpha_err
    assert beta_err <= 1e-12, beta_err
    elapsed = time.perf_counter() - start
    assert elapsed < 0.1, f"runtime {elapsed:.3f}s exceeds 0.1s"
    return (
        f"off-diag {off_err:.1e}, population spread {pop_err:.1e},"
        f" alpha/beta err {max(alpha_err, beta_err):.1e}, {elapsed * 1e3:.0f} ms"
    )


def criterion_7_rwa_validation():
    """Lab-frame vs ideal pulse across drive ratios; integrator order."""
    start = time.perf_counter()
    bounds = {1e-2: 1e-1, 1e-3: 1e-2, 1e-4: 1e-3}
    sweep = rwa_sweep(PARAMS, transition=(1, 2), ratios=tuple(bounds))
    for ratio, infidelity in sweep:
        assert infidelity <= bounds[ratio], (ratio, infidelity)
    infidelities = [i for _, i in sweep]
    assert all(a > b for a, b in zip(infidelities, infidelities[1:])), infidelities
    study = convergence_study(PARAMS, (1, 2), ratio=1e-2, refinements=2)
    order = study["orders"][0]
    assert order >= 1.9, order
    richardson = study["richardson_ratios"][0]
    assert richardson >= 3.5, richardson
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"runtime {elapsed:.1f}s exceeds 120s"
    parts = ", ".join(f"r={r:g}: {i:.1e}" for r, i in sweep)
    return f"{parts}; order {order:.2f}, Richardson {richardson:.2f}, {elapsed:.1f} s"


def criterion_8_end_to_end():
    """CLI pipeline: pseudo-pure -> gates, against a direct matrix oracle."""
    start = time.perf_counter()
    import tempfile
    from pathlib import Path

    e = closed_form_eigensystem(PARAMS)
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        def cli(argv):
            out = io.StringIO()
            code = run_command(argv, stdout=out)
            assert code == 0, (argv, code)
            return out.getvalue()

        pp_text = cli(["pseudo-pure", "--beta-scale", "1e-4", *CLI_FLAGS])
        rho_pp = parse_density_matrix(pp_text)
        (tmp / "pp.txt").write_text(pp_text)

        # CNOT(control=R) alone: |00> is a fixed point, populations frozen
        cnot_text = cli(["compile-gate", "--kind", "cnot", "--target", "R", *CLI_FLAGS])
        (tmp / "cnot.vsp").write_text(cnot_text)
        after_cnot = parse_density_matrix(
            cli(["simulate", str(tmp / "cnot.vsp"), "--initial", str(tmp / "pp.txt")])
        )
        fixed_err = float(np.max(np.abs(after_cnot - rho_pp)))
        assert fixed_err <= 1e-12, fixed_err

        # R flip (pi rotation) then CNOT: the excess ground population
        # moves 4 -> 2 -> 1
        rot_text = cli(
            ["compile-gate", "--kind", "rot", "--target", "R", "--angle", "pi", *CLI_FLAGS]
        )
        (tmp / "rot.vsp").write_text(rot_text)
        (tmp / "step1.txt").write_text(
            cli(["simulate", str(tmp / "rot.vsp"), "--initial", str(tmp / "pp.txt")])
        )
        rho_mid = parse_density_matrix((tmp / "step1.txt").read_text())
        assert np.argmax(np.real(np.diag(rho_mid))) == 1  # level 2 = |10>
        final = parse_density_matrix(
            cli(["simulate", str(tmp / "cnot.vsp"), "--initial", str(tmp / "step1.txt")])
        )

    # independent oracle: explicit matrices, scipy exponential, direct products
    ry = virtual_spin_components()["Ry"]
    u_rot = scipy.linalg.expm(-1j * np.pi * ry)
    u_cnot = (projector(3, 3).matrix + projector(4, 4).matrix
              + projector(2, 1).matrix - projector(1, 2).matrix)
    expected = u_cnot @ u_rot @ rho_pp @ u_rot.conj().T @ u_cnot.conj().T
    oracle_err = float(np.max(np.abs(final - expected)))
    assert oracle_err <= 1e-10, oracle_err
    assert np.argmax(np.real(np.diag(final))) == 0  # level 1 = |11>
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"runtime {elapsed:.3f}s exceeds 1s"
    return (
        f"fixed point {fixed_err:.1e}, oracle match {oracle_err:.1e},"
        f" {elapsed * 1e3:.0f} ms"
    )


CRITERIA = [
    (1, criterion_1_projector_algebra),
    (2, criterion_2_eigensystem_cross_check),
    (3, criterion_3_pulse_identities),
    (4, criterion_4_truth_tables),
    (5, criterion_5_rotation_compiler),
    (6, criterion_6_pseudo_pure),
    (7, criterion_7_rwa_validation),
    (8, criterion_8_end_to_end),
]


def _run_and_report(number, check):
    detail = check()
    print(f"[PASS] criterion {number}: {detail}")


def test_criterion_1():
    _run_and_report(*CRITERIA[0])


def test_criterion_2():
    _run_and_report(*CRITERIA[1])


def test_criterion_3():
    _run_and_report(*CRITERIA[2])


def test_criterion_4():
    _run_and_report(*CRITERIA[3])


def test_criterion_5():
    _run_and_report(*CRITERIA[4])


def test_criterion_6():
    _run_and_report(*CRITERIA[5])


def test_criterion_7():
    _run_and_report(*CRITERIA[6])


def test_criterion_8():
    _run_and_report(*CRITERIA[7])


if __name__ == "__main__":
    import sys

    failures = 0
    for number, check in CRITERIA:
        try:
            detail = check()
        except AssertionError as exc:
            failures += 1
            print(f"[FAIL] criterion {number}: {exc}")
        else:
            print(f"[PASS] criterion {number}: {detail}")
    print(f"{len(CRITERIA) - failures}/{len(CRITERIA)} criteria passed")
    sys.exit(1 if failures else 0)
