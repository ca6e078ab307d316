# Copyright 2026 The graphcode Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import os
import subprocess

import numpy as np
import pytest

import graphcode


def test_version():
    assert graphcode.__version__ == "0.1.0"


def test_pauli_algebra():
    p = graphcode.PauliString("X1") * graphcode.PauliString("Z1")
    assert p == graphcode.PauliString("-i Y1")
    s1 = graphcode.syndrome_operators()[0]
    assert str(s1) == "Y1 Z2 Z4 Y5"
    assert not graphcode.PauliString("X2").commutes(s1)
    assert graphcode.logical_ops()["Z"] == graphcode.PauliString("Z1 Z2 Z4 Z5")
    d = graphcode.PauliString("X1 Z2").dense([1, 2])
    assert np.allclose(d, np.kron([[0, 1], [1, 0]], [[1, 0], [0, -1]]))


def test_reshape():
    xe = graphcode.expand_logical(graphcode.PauliString("X3"))
    assert xe == graphcode.PauliString("Z1 Z2 X3 Z4 Z5")


def test_states():
    res = np.asarray(graphcode.build_resource())
    ref = np.asarray(graphcode.graph_state([1, 2, 3, 4, 5], [(1, 4), (1, 5), (2, 4), (2, 5), (1, 3), (2, 3), (3, 4), (3, 5)]))
    assert abs(abs(np.vdot(res, ref)) - 1.0) < 1e-9
    assert abs(res[0]) == pytest.approx(1 / math.sqrt(32))
    plus = np.asarray(graphcode.logical_state("+_L"))
    assert np.linalg.norm(plus) == pytest.approx(1.0)


def test_fidelities():
    for probe in ["0", "1", "+", "+y"]:
        assert graphcode.encode_fidelity(probe) == pytest.approx(1.0, abs=1e-9)
    assert graphcode.encode_fidelity("0", 0.5) == pytest.approx(0.5 + 0.5 / 16)
    assert graphcode.recovery_fidelity(4, 0.6, 0.8j) == pytest.approx(1.0, abs=1e-9)
    assert graphcode.syndrome_signs("Z@1", "+") == [-1, -1, 1]
    assert graphcode.predicted_signs("X@4") == [-1, -1, -1]
    assert graphcode.witness_value("resource5", "resource") == pytest.approx(-1.0)
    assert graphcode.witness_value("resource5", "resource", "as-printed") == pytest.approx(0.625)
    assert graphcode.fidelity_lower_bound(-0.16) == pytest.approx(0.58)


def test_run_experiment():
    out = graphcode.run_experiment({"kind": "syndrome-table", "sampling": {"enabled": False}})
    assert out["summary"]["results"]["all_match"] is True
    assert out["summary"]["results"]["single_error_entries"] == 48
    again = graphcode.run_experiment({"kind": "syndrome-table", "sampling": {"enabled": False}})
    assert json.dumps(out["summary"]) == json.dumps(again["summary"])
    with pytest.raises(ValueError):
        graphcode.run_experiment({"kind": "loss-recovery", "lost": [3]})


def test_cli_in_process():
    rc, out, _ = graphcode.cli(["syndrome", "--error", "Z@1", "--probe", "+"])
    assert rc == 0
    assert "(-1,-1,+1)" in out
    rc, _, _ = graphcode.cli(["nonsense"])
    assert rc == 1


@pytest.mark.skipif("GRAPHCODE_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_executable(tmp_path):
    exe = os.environ["GRAPHCODE_CLI"]
    run = subprocess.run([exe, "loss", "--ideal", "--lost", "1", "--format", "json"], capture_output=True, text=True)
    assert run.returncode == 0
    summary = json.loads(run.stdout)
    assert summary["results"]["losses"][0]["process_fidelity"] == pytest.approx(1.0, abs=1e-9)
    run = subprocess.run([exe, "witness", "--visibility", "0.9", "--out", str(tmp_path)], capture_output=True, text=True)
    assert run.returncode == 0
    assert (tmp_path / "summary.json").exists()
