import math

import numpy as np
import pytest

import gkdvlab as g


def test_grid_and_transform_round_trip():
    grid = g.Grid1D(16.0, 128)
    x = grid.positions()
    u = g.SpectralField.from_samples(grid, np.exp(-x**2))
    assert u.is_real
    assert np.max(np.abs(u.samples() - np.exp(-x**2))) < 1e-13
    assert u.coeffs().shape == (128,)


def test_airy_isometry_and_plancherel():
    grid = g.Grid1D(32.0, 256)
    u = g.gaussian_datum(grid, 1.0)
    v = g.airy_propagate(u, 3.0)
    for r in (1.0, 2.0, 4.0, math.inf):
        assert abs(g.lhat_norm(v, r) / g.lhat_norm(u, r) - 1.0) < 1e-12
    # ||exp(-x^2/2)||_2^2 = sqrt(pi)
    assert abs(g.lebesgue_norm(u, 2.0) ** 2 - math.sqrt(math.pi)) < 1e-12
    assert abs(g.lhat_norm(u, 2.0) - g.lebesgue_norm(u, 2.0)) < 1e-12


def test_classify_pair_corners():
    assert g.classify_pair(0.0, math.inf)["acceptable"]
    assert g.classify_pair(-0.25, 2.0)["acceptable"]
    assert g.classify_pair(1.0, 2.0)["acceptable"]
    assert not g.classify_pair(0.0, 4.0 / 3.0)["acceptable"]


def test_picard_matches_reference():
    grid = g.Grid1D(32.0, 128)
    u0 = g.gaussian_datum(grid, 0.05)
    sol = g.picard_solve(u0, t_end=0.5, time_samples=64)
    ref = g.reference_solve(u0, t_end=0.5, time_samples=64)
    assert sol["converged"]
    assert max(sol["contraction_factors"]) <= 0.5
    assert sol["samples"].shape == ref["samples"].shape == (65, 128)
    assert np.max(np.abs(sol["samples"] - ref["samples"])) < 1e-8


def test_cli_layer():
    code, report, csv = g.execute("counterexample", n="4,16,64")
    assert code == 0
    assert all(abs(row["lhat"] - 1.0) < 1e-10 for row in report["result"]["rows"])
    assert csv.startswith("n,lhat,sobolev")
    assert report["version"] == g.__version__
    with pytest.raises(ValueError, match="solve.amp"):
        g.resolve_config("solve", amp="x")
    assert "strichartz" in g.estimate_ids()
    result = g.verify("stein_tomas", r=6, ensemble=3, points=128, half_length=32, refine=False)
    assert result["all_finite"] and result["max_ratio"] > 0
