"""Smoke test for the fwlab extension module.

Build and install first:  pip install maturin && maturin develop -m crates/python/Cargo.toml
"""

import math
import sys

import fwlab


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    p = fwlab.ModelParams(m=1.0, e=1.0, H=0.1, mu_prime=0.0, n_max=16)
    print(p)

    beta = fwlab.dirac_matrix("beta")
    assert [beta[i][i].real for i in range(4)] == [1.0, 1.0, -1.0, -1.0]

    assert close(fwlab.laguerre(2, 1, 0.5), 1.625, 1e-15)

    records = fwlab.analytic_spectrum(p)
    assert records[0].eps0 == 1.0
    rec = next(r for r in records if r.n == 0 and r.lam == -1)
    assert close(rec.eps0, math.sqrt(1.2), 1e-15), rec

    values = fwlab.dirac_eigenvalues(p)
    assert len(values) == p.dim
    assert close(min(v for v in values if v > 0), 1.0, 1e-13)

    state, rec = fwlab.dirac_eigenstate(p, 2, 1)
    fw = fwlab.connect_to_fw(p, state, rec)
    lower = math.sqrt(sum(abs(z) ** 2 for k, z in enumerate(fw) if k % 4 >= 2))
    assert lower < 1e-12
    u = fwlab.fw_unitary(p)
    image = [sum(u[i][j] * state[j] for j in range(p.dim)) for i in range(p.dim)]
    overlap = sum(a.conjugate() * b for a, b in zip(fw, image))
    assert close(abs(overlap), 1.0, 1e-10)

    upper = [z for k, z in enumerate(state) if k % 4 < 2]
    renorm = fwlab.renormalized_fw(upper)
    assert close(sum(abs(z) ** 2 for z in renorm), 1.0, 1e-12)

    b = p.magnetic_length
    grid = [12 * b * (i + 1) / 4000 for i in range(4000)]
    samples = fwlab.fw_wavefunction(p, 0, 1, 0.5, grid)
    assert samples[-1][1] < 1e-6

    reports = fwlab.run_suite(p)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        print(f"  {r.check_name:32s} {r.max_residual:.3e} / {r.tolerance:.0e}")
    assert not failed, failed

    sabotaged = fwlab.run_suite(fwlab.ModelParams(mu_prime=0.1, n_max=16), sabotage=True)
    assert any(r.check_name == "exactness_commutator" and not r.passed for r in sabotaged)

    try:
        fwlab.ModelParams(H=-0.1)
    except ValueError as exc:
        print("rejected:", exc)
    else:
        raise AssertionError("negative field accepted")

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
