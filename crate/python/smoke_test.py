"""Smoke test for the maglap Python extension.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`
inside a virtualenv, or `pip install crates/python`.
"""

import math

import maglap


def close(a, b, tol=1e-8):
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def main():
    g1 = maglap.Graph(6, [(0, 4), (4, 5), (1, 2), (1, 3), (2, 4), (3, 4)])
    assert g1.n == 6 and g1.m == 6
    r5 = math.sqrt(5)
    assert close(maglap.spectrum(g1), [0, 3 - r5, 1, 2, 3, 3 + r5])

    cert = maglap.certify_nonmatchable(g1)
    assert cert is not None and cert["kind"] == "NonMatchable" and cert["index"] == 4
    assert cert["lhs"] < 2 - maglap.DELTA_CERT
    assert len(maglap.maximum_matching(g1)) == 2
    assert maglap.find_hamiltonian_cycle(g1) is None

    c6 = maglap.Graph.cycle(6)
    assert sorted(maglap.find_hamiltonian_cycle(c6)) == list(range(6))
    assert maglap.certify_nonhamiltonian(c6, route="cycle", mode="robust") is None
    closed = maglap.cycle_spectrum_closed_form(6, math.pi)
    pot = [0.0] * 6
    pot[c6.chords()[0]] = math.pi
    assert close(maglap.spectrum(c6, potential=pot), closed)

    text = "3 3\n0 1 0.5\n1 2 0.25\n0 2 0.75\n"
    tri, p = maglap.parse_graph_file(text)
    assert maglap.is_gauge_equivalent(tri, p, [0.0, 0.0, 0.0])
    assert close(maglap.chord_fluxes(tri, p), [0.0])

    assert maglap.spectrally_less(maglap.spectrum(g1.delete_edges([4])), maglap.spectrum(g1))
    csv = maglap.sweep_csv(g1, "single-chord", 8)
    assert csv.splitlines()[0].startswith("t,lambda_1")

    report = maglap.verify_theorem_suite(0, 10)
    assert all(t["failed"] == 0 for t in report["tallies"])

    try:
        maglap.Graph(3, [(0, 0)])
    except maglap.MaglapError as e:
        assert "loop" in str(e)
    else:
        raise AssertionError("loop edge accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
