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

"""Python interface to the graphcode simulator."""

import json as _json

from ._core import (  # noqa: F401
    ConfigError,
    PauliString,
    __version__,
    build_resource,
    cli,
    encode_fidelity,
    expand_logical,
    fidelity_lower_bound,
    graph_state,
    logical_ops,
    logical_state,
    predicted_signs,
    recovery_fidelity,
    reshape_by_stabilizer,
    syndrome_operators,
    syndrome_signs,
    witness_value,
)
from ._core import _run_experiment


def run_experiment(config):
    """Runs an experiment from a config dict; returns the summary dict plus CSV/SVG files and text lines."""
    summary, csv, svg, text = _run_experiment(_json.dumps(config))
    return {"summary": _json.loads(summary), "csv": csv, "svg": svg, "text": text}
