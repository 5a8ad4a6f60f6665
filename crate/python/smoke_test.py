"""Smoke test for the pqvir extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

from fractions import Fraction

import pqvir


def main() -> None:
    t = pqvir.bracket([0, 1, 2])
    assert str(t.coeff) == "q^-2 - p^2" and t.index == 3, t
    assert pqvir.oracle_bracket([0, 1, 2]) == t
    assert str(pqvir.pq_number(-1)) == "-p*q^-1"

    # [L_m, L_n] reduces to (m - n) L_{m+n} in the classical limit
    for m in range(-3, 4):
        for n in range(-3, 4):
            c = pqvir.bracket([m, n]).coeff.specialize()
            assert c == pqvir.q_number(m - n)
            assert c.classical_value() == Fraction(m - n)

    assert [pqvir.sign(n) for n in (3, 4, 5)] == [-1, 1, 1]
    assert len(pqvir.shuffles(3)) == 10
    assert pqvir.check_skew([0, 1, 2, 3])["verdict"] == "pass"
    assert pqvir.sh_jacobi_residual(3, [0, 1, 2, 3, 4]).is_zero()
    assert pqvir.deformed_jacobi2_residual(0, 1, 2).is_zero()
    assert pqvir.q_jacobi2_residual(0, 1, 2).is_zero()

    y, x, r = pqvir.fi_counterexample_even(4)
    assert (y, x) == ([-2, -3, 6], [0, 1, 2, 3]) and not r.is_zero()

    rep = pqvir.analyze(pqvir.canonical_basis(3), 3)
    assert rep["closed"] and rep["fi_pass"] and rep["iso_canonical"], rep
    assert rep["coeff"] == str(pqvir.canonical_coeff(3))
    found = pqvir.search(2, 3)
    assert len(found["found"]) == 6 and not found["violations"]
    _, symmetric = pqvir.filippov_matrix([-1, 0, 1, 2], 3)
    assert not symmetric

    code, report = pqvir.run_cli(["verify", "all", "--level", "smoke"])
    assert code == 0 and report["summary"]["fail"] == 0, report
    code, report = pqvir.run_cli(["verify", "sh-jacobi", "--n", "3", "--indices", "0,1"])
    assert code == 2 and report is None

    try:
        pqvir.bracket([0])
    except pqvir.PqvirError:
        pass
    else:
        raise AssertionError("arity error not raised")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
