import json

import pytest

from streamscope.cli import main
from streamscope.corpus import cc_benchmark
from streamscope.graphs import serialize_edge_list


@pytest.fixture
def cc_file(tmp_path):
    path = tmp_path / "cc.el"
    path.write_text(serialize_edge_list(cc_benchmark()))
    return str(path)


def test_run_cc_writes_report(cc_file, tmp_path):
    out = str(tmp_path / "r.json")
    rc = main(["run-cc", "--input", cc_file, "--n", "230", "--tau", "0.1",
               "--samples", "2000", "--kmax", "8", "--seed", "7",
               "--out", out])
    assert rc == 0
    doc = json.loads(open(out).read())
    assert doc["algorithm"] == "num-cc" and "total" in doc
    assert doc["n"] == 230 and doc["m"] == 180


def test_run_cc_missing_n_exits_2(tmp_path, capsys):
    path = tmp_path / "g.el"
    path.write_text("1 2\n2 3\n")
    rc = main(["run-cc", "--input", str(path), "--tau", "0.1",
               "--samples", "10", "--kmax", "2"])
    assert rc == 2
    assert "--n" in capsys.readouterr().err


def test_run_cc_header_supplies_n(tmp_path, capsys):
    path = tmp_path / "g.el"
    path.write_text("n=4\n1 2\n")
    rc = main(["run-cc", "--input", str(path), "--tau", "0.1",
               "--samples", "4", "--kmax", "2"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["n"] == 4


def test_run_cc_exact(cc_file, capsys):
    rc = main(["run-cc", "--input", cc_file, "--n", "230", "--tau", "0.1",
               "--samples", "5", "--kmax", "8", "--exact"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["total"] == 100


def test_run_cc_given_order(cc_file, capsys):
    rc = main(["run-cc", "--input", cc_file, "--n", "230", "--tau", "0.1",
               "--samples", "50", "--kmax", "3", "--seed", "1",
               "--stream-order", "given"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["m"] == 180


def test_input_error_exit_3(tmp_path, capsys):
    path = tmp_path / "bad.el"
    path.write_text("n=3\n1 1\n")
    rc = main(["run-cc", "--input", str(path), "--n", "3", "--tau", "0.1",
               "--samples", "3", "--kmax", "2"])
    assert rc == 3


def test_weight_error_exit_4(tmp_path, capsys):
    path = tmp_path / "w.el"
    path.write_text("n=3\n1 2 9\n2 3 1\n")
    rc = main(["run-mst", "--input", str(path), "--n", "3", "--W", "3",
               "--tau", "0.1", "--samples", "3", "--kmax", "2"])
    assert rc == 4


def test_run_mst_exact_k3(tmp_path, capsys):
    path = tmp_path / "k3.el"
    path.write_text("n=3\n1 2 1\n1 3 2\n2 3 3\n")
    rc = main(["run-mst", "--input", str(path), "--n", "3", "--tau", "0.1",
               "--samples", "3", "--kmax", "2", "--exact"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["estimate"] == 3


def test_run_mst_w1_short_circuit(tmp_path, capsys):
    path = tmp_path / "w1.el"
    path.write_text("n=2\n1 2 1\n")
    rc = main(["run-mst", "--input", str(path), "--n", "2", "--W", "1",
               "--tau", "0.1", "--samples", "2", "--kmax", "2"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["estimate"] == 1


def test_run_disc_report(capsys):
    rc = main(["run-disc", "--gen", "triangles:5", "--k", "1", "--d", "2",
               "--tau", "0.3", "--samples", "15", "--seed", "3"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["algorithm"] == "num-disc" and "per_type" in doc


def test_run_mis_near_half(tmp_path, capsys):
    from streamscope.corpus import mixed_components
    path = tmp_path / "pairs.el"
    path.write_text(serialize_edge_list(mixed_components(edges_=40)))
    rc = main(["run-mis", "--input", str(path), "--n", "80", "--k", "2",
               "--d", "2", "--tau", "0.3", "--samples", "400",
               "--mis-samples", "600", "--mis-component-cap", "4",
               "--seed", "5"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["estimate"] - 40) <= 12


def test_run_mis_component_cap_exit_5(tmp_path, capsys):
    from streamscope.corpus import disjoint_union, path_block
    path = tmp_path / "big.el"
    g = disjoint_union([path_block(9), []], [9, 1])
    path.write_text(serialize_edge_list(g))
    rc = main(["run-mis", "--input", str(path), "--n", "10", "--k", "0",
               "--d", "3", "--tau", "0.4", "--samples", "200",
               "--mis-component-cap", "3", "--seed", "2"])
    assert rc == 5


def test_reports_byte_identical(cc_file, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = str(tmp_path / name)
        rc = main(["run-cc", "--input", cc_file, "--n", "230", "--tau", "0.1",
                   "--samples", "400", "--kmax", "4", "--seed", "11",
                   "--out", out])
        assert rc == 0
        outs.append(open(out, "rb").read())
    assert outs[0] == outs[1]


def test_gen_round_trip(tmp_path, capsys):
    rc = main(["gen", "--preset", "mst-path", "--out",
               str(tmp_path / "g.el")])
    assert rc == 0
    from streamscope.graphs import load_edge_list
    g = load_edge_list(open(tmp_path / "g.el", "rb"))
    assert g.n == 200 and g.weighted


def test_verify_only_single_check(capsys):
    rc = main(["verify", "--only", "false-positive-ratio"])
    out = capsys.readouterr().out
    assert rc == 0 and "false-positive-ratio" in out and "PASS" in out


def test_verify_unknown_check(capsys):
    rc = main(["verify", "--only", "nonsense"])
    assert rc == 2


def test_verify_mutation_detected(capsys):
    # A deliberate off-by-one in the depth-gap test must break the exact
    # probability check; runtime stays small via an in-process call.
    from streamscope.verification import (check_exact_probabilities,
                                          mutated_depth_gap)
    from streamscope import canonical

    with mutated_depth_gap(canonical.DEPTH_GAP + 1):
        result = check_exact_probabilities(trials=2000)
    assert not result.passed


def test_params_documentation(capsys):
    rc = main(["params", "--epsilon", "0.5", "--rho", "0.333333333333"])
    out = capsys.readouterr().out
    assert rc == 0 and "-24.8" in out


def test_env_seed_default(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("STREAMSCOPE_SEED", "12345")
    import importlib
    import streamscope.cli as cli_mod
    importlib.reload(cli_mod)
    args = cli_mod.build_parser().parse_args(
        ["run-cc", "--gen", "triangles:2", "--tau", "0.1", "--samples", "3",
         "--kmax", "2"])
    assert args.seed == 12345
    importlib.reload(cli_mod)


def test_run_checks_fast_suite_passes():
    from streamscope.verification import run_checks
    results = run_checks(fast=True)
    assert all(r.passed for r in results), [r.line() for r in results]
    assert len(results) == 7


def test_sweep_jobs_deterministic():
    from streamscope.verification import check_enumerator_montecarlo
    a = check_enumerator_montecarlo(trials=2000, max_n=4, max_m=4, jobs=1)
    b = check_enumerator_montecarlo(trials=2000, max_n=4, max_m=4, jobs=2)
    assert a.details == b.details and a.passed == b.passed


def test_run_mst_path_corpus_report(tmp_path):
    out = str(tmp_path / "mst.json")
    rc = main(["run-mst", "--gen", "mst-path", "--tau", "0.05",
               "--samples", "5000", "--kmax", "8", "--seed", "3",
               "--out", out])
    assert rc == 0
    doc = json.loads(open(out).read())
    assert doc["algorithm"] == "mst-weight"
    assert set(doc["per_threshold"]) == {"1"}
    assert doc["n"] == 200 and doc["W"] == 2
