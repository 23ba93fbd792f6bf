import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

import gaussian_qi as gqi
from gaussian_qi import cli
from gaussian_qi.qkd import QkdScenario


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(cli.main, list(args))
    return result


def invoke_json(runner, *args):
    result = invoke(runner, *args)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_qkd_rate_matches_library(runner):
    payload = invoke_json(runner, "qkd", "rate", "--states", "coherent",
                          "--detection", "homodyne", "--rec", "reverse",
                          "--V", "20", "--tau", "0.5", "--chi", "0.05", "--beta", "1")
    scenario = QkdScenario(states="coherent", detection="homodyne",
                           reconciliation="reverse", v=20.0, tau=0.5, chi=0.05)
    result = gqi.key_rate(scenario)
    assert payload["I_ab"] == float(result.i_ab)
    assert payload["S_eve"] == result.s_eve
    assert payload["K"] == result.key
    assert payload["K"] == pytest.approx(0.15533892602155264, abs=1e-12)


def test_channel_classify_point_case(runner):
    payload = invoke_json(runner, "channel", "classify", "--json",
                          '{"T":[[0,0],[0,0]],"N":[[3,0],[0,3]],"d":[0,0]}')
    assert payload["class_label"] == "A1"
    assert payload["n_bar"] == pytest.approx(1.0)
    assert payload["rank"] == 0


def test_protocol_clone_point_case(runner):
    payload = invoke_json(runner, "protocol", "clone", "--input", "coherent",
                          "--alpha", "1,0")
    assert payload["clone_fidelity"] == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert payload["anticlone_fidelity"] == pytest.approx(0.5, abs=1e-12)


def test_state_pipeline(runner):
    made = invoke(runner, "state", "make", "--kind", "epr", "--r", "1.0")
    assert made.exit_code == 0
    report = invoke_json(runner, "state", "validate", "--json", made.output)
    assert report["uncertainty_ok"] is True
    entropy = invoke_json(runner, "state", "entropy", "--json", made.output)
    assert entropy["entropy"] == pytest.approx(0.0, abs=1e-9)


def test_log_base_option(runner):
    thermal = invoke(runner, "state", "make", "--kind", "thermal", "--nbar", "1.0")
    bits = invoke_json(runner, "state", "entropy", "--json", thermal.output)["entropy"]
    nats = invoke_json(runner, "--log-base", "e", "state", "entropy",
                       "--json", thermal.output)["entropy"]
    assert nats == pytest.approx(bits * math.log(2.0))


def test_hbar_override_rejected(runner):
    result = invoke(runner, "--hbar", "1", "state", "make", "--kind", "vacuum")
    assert result.exit_code == 2
    assert "hbar" in result.output


def test_malformed_json_names_field(runner):
    result = invoke(runner, "channel", "classify", "--json", "{oops")
    assert result.exit_code == 2
    assert "--json" in result.output


def test_validation_failure_exit_code(runner):
    result = invoke(runner, "qkd", "rate", "--states", "coherent",
                    "--detection", "homodyne", "--rec", "reverse",
                    "--V", "0.5", "--tau", "0.5", "--chi", "0")
    assert result.exit_code == 2
    assert "validation error" in result.output


def test_numerical_failure_exit_code(runner, monkeypatch):
    def boom(*args, **kwargs):
        raise gqi.NumericalError("synthetic instability")

    monkeypatch.setattr(cli, "security_threshold", boom)
    result = invoke(runner, "qkd", "threshold", "--states", "coherent",
                    "--detection", "homodyne", "--rec", "reverse",
                    "--V", "20", "--tau", "0.5")
    assert result.exit_code == 3
    assert "numerical error" in result.output


def test_qkd_rate_csv_sweep(runner):
    result = invoke(runner, "qkd", "rate", "--states", "coherent",
                    "--detection", "homodyne", "--rec", "reverse",
                    "--V", "20", "--tau", "0.4,0.5", "--chi", "0.01,0.05", "--csv")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "# gaussian-qi v0.1.0"
    assert lines[1] == "tau,chi,V,beta,I_ab,S_eve,K"
    assert len(lines) == 6
    # deterministic row order: tau is the outer loop
    taus = [float(line.split(",")[0]) for line in lines[2:]]
    assert taus == [0.4, 0.4, 0.5, 0.5]


def test_seeded_sampling_is_reproducible(runner):
    epr = invoke(runner, "state", "make", "--kind", "epr", "--r", "1.0").output
    first = invoke_json(runner, "--seed", "11", "measure", "--json", epr, "--sample")
    second = invoke_json(runner, "--seed", "11", "measure", "--json", epr, "--sample")
    assert first["outcome"] == second["outcome"]
    different = invoke_json(runner, "--seed", "12", "measure", "--json", epr, "--sample")
    assert different["outcome"] != first["outcome"]


def test_measure_conditioning_matches_library(runner):
    epr = invoke(runner, "state", "make", "--kind", "epr", "--r", "0.8").output
    payload = invoke_json(runner, "measure", "--json", epr, "--kind", "homodyne",
                          "--mode", "0", "--outcome", "0.3")
    direct = gqi.homodyne(gqi.epr_state(0.8), 0, 0.3)
    assert np.allclose(payload["state"]["mean"], direct.mean)
    assert np.allclose(payload["state"]["cov"], direct.cov)


def test_unitary_apply_and_entangle(runner):
    vac2 = invoke(runner, "state", "make", "--kind", "vacuum", "--num-modes", "2").output
    squeezed = invoke_json(runner, "unitary", "apply", "--gate", "two_mode_squeezer",
                           "--param", "1.0", "--json", vac2)
    report = invoke_json(runner, "entangle", "test", "--json", json.dumps(squeezed),
                         "--modes-b", "1")
    assert report["separable"] is False
    assert report["log_negativity"] == pytest.approx(2.0 / math.log(2.0), abs=1e-9)


def test_discriminate_commands(runner):
    vac = invoke(runner, "state", "make", "--kind", "vacuum").output
    coh = invoke(runner, "state", "make", "--kind", "coherent", "--alpha", "0.6,0").output
    bounds = invoke_json(runner, "discriminate", "bounds", "--json0", vac, "--json1", coh)
    assert bounds["f_lower"] <= bounds["p_qcb"] <= bounds["f_upper"]
    receivers = invoke_json(runner, "discriminate", "receivers", "--alpha", "0.6")
    assert receivers["helstrom"] <= receivers["odr"]["p_error"] + 1e-12


def test_cluster_commands(runner):
    graph = json.dumps({"vertices": [{"r": 1.0}] * 3,
                        "edges": [[0, 1, 1.0], [1, 2, 1.0]]})
    built = invoke_json(runner, "cluster", "build", "--json", graph)
    assert np.allclose(built["nullifier_variances"], math.exp(-2.0), atol=1e-12)
    measured = invoke_json(runner, "cluster", "measure", "--json", graph,
                           "--measure", "1:p")
    assert measured["graph"]["edges"] == [[0, 1, 1.0]]
    nulls = invoke_json(runner, "cluster", "nullifiers", "--json", graph)
    assert np.allclose(nulls["means"], 0.0)


def test_oracle_compare(runner):
    payload = invoke_json(runner, "oracle", "compare", "--kind0", "coherent",
                          "--alpha0", "0.8,0", "--kind1", "squeezed", "--r1", "0.4")
    assert payload["fock"]["fidelity"] == pytest.approx(payload["gaussian"]["fidelity"],
                                                        abs=1e-6)
    assert payload["moment_gap"]["state0"] < 1e-8
    assert payload["moment_gap"]["state1"] < 1e-8


def test_qkd_threshold_and_postselect(runner):
    threshold = invoke_json(runner, "qkd", "threshold", "--states", "coherent",
                            "--detection", "homodyne", "--rec", "reverse",
                            "--V", "20", "--tau", "0.5")
    assert threshold["chi_max"] == pytest.approx(0.23808835, abs=1e-6)
    ps = invoke_json(runner, "qkd", "postselect", "--tau", "1.0", "--chi", "0",
                     "--va", "3.0")
    assert ps["key"] == pytest.approx(0.274278, abs=2e-3)


def test_protocol_teleport_band(runner):
    payload = invoke_json(runner, "protocol", "teleport", "--r", "1.0")
    assert payload["fidelity"] == pytest.approx(1.0 / (1.0 + math.exp(-2.0)), abs=1e-12)
    assert payload["band"] == "no_cloning"
