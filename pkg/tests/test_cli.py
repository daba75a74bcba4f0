"""CLI harness: exit codes, output formats, manifests, and replay."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from nbspectra.cli import (CliInputError, ExperimentManifest, colored_experiment,
                           growing_degree, lift_convergence, main,
                           schedule_branching)
from nbspectra.multigraph import (build_from_edge_list, complete_graph,
                                  save_graph_file)


@pytest.fixture()
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    save_graph_file(complete_graph(4), path)
    return path


def test_census_exit_ok_and_output(k4_file, tmp_path, capsys):
    code = main(["census", str(k4_file), "--rmax", "6",
                 "--out", str(tmp_path / "out")])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out
    assert "girth = 3" in out
    csv = (tmp_path / "out" / "census.csv").read_text().splitlines()
    assert csv[0] == "manifest_hash,r,f,c,z"
    assert csv[1].endswith(",0,4,0,0")
    assert csv[4].endswith(",3,24,24,4")


def test_census_stdout_when_no_out(k4_file, capsys):
    assert main(["census", str(k4_file), "--rmax", "4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("r,f,c,z")


def test_census_rejects_non_regular(tmp_path, capsys):
    path = tmp_path / "path.txt"
    save_graph_file(build_from_edge_list([(0, 1), (1, 2)], 3), path)
    assert main(["census", str(path)]) == 2
    err = capsys.readouterr().err
    assert "vertex" in err


def test_census_parse_error_carries_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 7\n")
    assert main(["census", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_census_missing_file_is_input_error(capsys):
    assert main(["census", "does-not-exist.txt"]) == 2


def test_laws_outputs_and_bounds(tmp_path, capsys):
    code = main(["laws", "--q", "50", "--m", "53",
                 "--out", str(tmp_path)])
    assert code == 0
    rows = (tmp_path / "laws_density.csv").read_text().splitlines()
    assert rows[0] == ("manifest_hash,q,sup_density_gap,bound,pass,"
                       "winf_to_semicircle")
    fields = rows[1].split(",")
    assert fields[4] == "true"
    assert float(fields[2]) <= float(fields[3])
    cyc = (tmp_path / "laws_cycles.csv").read_text().splitlines()
    assert cyc[1].split(",")[4] == "true"
    manifest = json.loads((tmp_path / "laws_density_manifest.json").read_text())
    assert manifest["manifest_hash"] == fields[0] == rows[1].split(",")[0]


def test_laws_q_bound_validation(capsys):
    assert main(["laws", "--q", "2", "--m", "10"]) == 2


def test_replay_is_byte_identical(tmp_path):
    argv = ["grow", "--n", "32", "--n", "64", "--schedule", "fixed", "--q", "3",
            "--trials", "3", "--seed", "5", "--p", "2", "--rmax", "2"]
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(out_a)]) == 0
    assert main(argv + ["--out", str(out_b)]) == 0
    for name in ("grow_distances.csv", "grow_circuits.csv",
                 "grow_distances_manifest.json"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_json_format_output(tmp_path, k4_file):
    assert main(["colored", str(k4_file), "--color", "trivial", "--N", "2",
                 "--out", str(tmp_path), "--format", "json",
                 "--rmax", "4"]) == 0
    records = json.loads((tmp_path / "colored_distances.json").read_text())
    assert isinstance(records, list) and records
    assert set(records[0]) >= {"manifest_hash", "color", "N", "p",
                               "colored_distance", "base_distance"}


def test_grow_schedule_validation():
    assert schedule_branching("log", 64, None) == 6
    assert schedule_branching("log", 1 << 20, None) == 7
    assert schedule_branching("fixed", 64, 3) == 3
    with pytest.raises(CliInputError):
        schedule_branching("fixed", 64, None)
    with pytest.raises(CliInputError):
        growing_degree([10], [8], 1, 0, [2.0], 2)  # degree 9 above cap
    with pytest.raises(CliInputError):
        growing_degree([9], [2], 1, 0, [2.0], 2)  # odd n * degree


def test_grow_parity_error_exit_code(capsys):
    assert main(["grow", "--n", "9", "--schedule", "fixed", "--q", "2",
                 "--trials", "1"]) == 2


def test_fold_one_lift_distance_is_deterministic_base_distance():
    from nbspectra.spectra import kesten_mckay, spectral_measure, wasserstein_p
    base = complete_graph(4)
    result = lift_convergence(base, [1], trials=3, seed=11, r_max=2,
                              p_list=[1.0])
    (_, _, mean, se, _), = result["distance_rows"]
    direct = wasserstein_p(spectral_measure(base), kesten_mckay(2.0), 1.0)
    assert mean == pytest.approx(direct, abs=1e-12)
    assert se == pytest.approx(0.0, abs=1e-12)


def test_lift_with_cycle_base_uses_arcsine_target():
    from nbspectra.multigraph import cycle_graph
    result = lift_convergence(cycle_graph(4), [8], trials=2, seed=4,
                              r_max=2, p_list=[1.0])
    assert result["q"] == 1
    (fold, p, mean, se, trials), = result["distance_rows"]
    assert fold == 8 and math.isfinite(mean) and mean > 0


def test_manifest_document_records_stream_policy(tmp_path, k4_file):
    assert main(["colored", str(k4_file), "--color", "trivial", "--N", "1",
                 "--out", str(tmp_path), "--rmax", "2"]) == 0
    doc = json.loads((tmp_path / "colored_distances_manifest.json").read_text())
    assert "pcg64" in doc["stream_policy"]
    assert doc["package_version"]


def test_trivial_color_matches_uncolored(k4_file):
    base = complete_graph(4)
    result = colored_experiment(base, "trivial", 3, 0, [1.0, 2.0], 4)
    for row in result["rows"]:
        assert row[3] == pytest.approx(row[4], abs=1e-9)


def test_colored_permutation_matches_lift_cell():
    base = complete_graph(4)
    seed, fold = 9, 4
    lift_result = lift_convergence(base, [fold], trials=1, seed=seed,
                                   r_max=3, p_list=[1.0, 2.0])
    colored_result = colored_experiment(base, "permutation", fold, seed,
                                        [1.0, 2.0], 3)
    for (_, p1, mean, _, _), (_, _, p2, dist, _) in zip(
            lift_result["distance_rows"], colored_result["rows"]):
        assert p1 == p2
        assert mean == pytest.approx(dist, abs=1e-9)


def test_lift_residuals_vanish_below_girth():
    base = complete_graph(4)
    result = lift_convergence(base, [4], trials=2, seed=1, r_max=2,
                              p_list=[1.0])
    for _, r, mean_residual in result["residual_rows"]:
        if r < 3:  # every lift of K4 keeps girth >= 3
            assert abs(mean_residual) <= 1e-9


def test_negative_control_plateaus_near_law_distance():
    from nbspectra.spectra import kesten_mckay, semicircle, wasserstein_p
    floor = wasserstein_p(kesten_mckay(3.0), semicircle(), 2)
    result = growing_degree([64, 128], [3, 3], trials=3, seed=2,
                            p_list=[2.0], r_max=2)
    last_mean = result["means"][2.0][-1]
    assert last_mean == pytest.approx(floor, rel=0.15)


def test_manifest_hash_stability():
    m1 = ExperimentManifest("lift", {"N": [2, 8], "trials": 5}, 3)
    m2 = ExperimentManifest("lift", {"trials": 5, "N": [2, 8]}, 3)
    assert m1.hash == m2.hash
    m3 = ExperimentManifest("lift", {"N": [2, 8], "trials": 6}, 3)
    assert m1.hash != m3.hash


def test_grow_reports_zero_short_circles(tmp_path):
    result = growing_degree([32], [3], trials=4, seed=7, p_list=[2.0], r_max=2)
    for row in result["distance_rows"]:
        assert row[-1] == 0  # nonsimple_samples column
