"""Validates CLI reports for every bundled system against the report schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema

exe, root = sys.argv[1], pathlib.Path(sys.argv[2])
schema = json.loads((root / "reports/schema/report-v1.schema.json").read_text())
validator = jsonschema.Draft202012Validator(schema)

checked = 0
for toml in sorted((root / "systems").glob("*.toml")):
    for cmd in (["report"], ["ktheory"], ["validate"]):
        out = subprocess.run([exe, *cmd, str(toml), "--format", "json"], capture_output=True, text=True)
        if out.returncode not in (0, 1):
            sys.exit(f"{toml.name} {cmd}: exit {out.returncode}\n{out.stderr}")
        doc = json.loads(out.stdout)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            for e in errors:
                print(f"{toml.name} {cmd}: {'/'.join(map(str, e.path))}: {e.message}")
            sys.exit(1)
        if doc["exit_code"] != out.returncode:
            sys.exit(f"{toml.name}: report exit_code {doc['exit_code']} but process exited {out.returncode}")
        checked += 1
print(f"{checked} reports valid")
