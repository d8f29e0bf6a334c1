# Copyright 2026 The biphoton Authors
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

"""Checks that every scheme's JSON report matches docs/report-schema.json."""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["--scheme", "linear-forward"],
    ["--scheme", "linear-inverse", "--seed", "3"],
    ["--scheme", "kerr-forward", "--param", "variant=double-xpm"],
    ["--scheme", "kerr-forward", "--param", "variant=double-xpm", "--param", "meas_mode=physical",
     "--param", "qubus_alpha=5", "--param", "theta=0.1"],
    ["--scheme", "kerr-inverse", "--alpha", "0.6", "--beta", "0,0.8", "--gamma", "0"],
    ["--scheme", "u3", "--matrix", "random", "--param", "backend=linear"],
    ["--scheme", "u3", "--matrix", "random"],
]


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    for args in RUNS:
        out = subprocess.run([cli, "run", *args], check=True, capture_output=True, text=True).stdout
        jsonschema.validate(json.loads(out), schema)
        print("ok:", " ".join(args))


if __name__ == "__main__":
    main()
