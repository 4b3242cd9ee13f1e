"""Smoke test for the pypolariton extension module.

Build and install first:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""

import math

import pypolariton as pp


def main():
    model = pp.Model.ocs()
    assert abs(model.omega("minus") - 0.9) < 1e-12
    assert abs(model.omega("plus") - 1.1) < 1e-12
    assert abs(model.max_orientation() - math.sqrt(1 / 3)) < 1e-12

    target = pp.TargetState.max_orientation(0.0, math.pi / 9)
    amps = target.amplitudes
    assert abs(amps[0] ** 2 - 0.5) < 1e-12

    design = pp.PulseDesign(model, target, bandwidth_over_g=0.1)
    assert design.is_narrow_band(model.coupling)
    minus = design.pulse("minus")
    assert abs(minus["area"] - math.sqrt(2) * math.pi / 8) < 1e-9

    result = pp.simulate(model, design, target)
    assert abs(result["fidelity"] - 0.9999) < 5e-4, result["fidelity"]
    peak_time, peak_value = result["peak"]
    assert abs(abs(peak_value) - math.sqrt(1 / 3)) < 1e-3

    c = pp.magnus_amplitudes(0j, 0j)
    assert c == [1 + 0j, 0j, 0j]

    sweep = pp.run_experiment("fig2", "[sweep]\npoints = 3\n")
    table = sweep["tables"]["fig2"]
    assert table["columns"][0] == "bandwidth_over_g"
    assert len(table["rows"]) == 3

    try:
        pp.run_experiment("fig9")
    except ValueError as err:
        assert "unknown_experiment" in str(err)
    else:
        raise AssertionError("unknown experiment accepted")

    failed = [c for c in pp.self_check() if not c[3]]
    assert not failed, failed

    print(f"ok: F={result['fidelity']:.6f} peak={abs(peak_value):.6f} at t={peak_time / pp.TAU0:.3f} tau0")


if __name__ == "__main__":
    main()
