# Runs every command on every test problem and validates the JSON output.
import glob
import json
import subprocess
import sys

import jsonschema

tool, schema_path, data = sys.argv[1:4]
validator = jsonschema.Draft202012Validator(json.load(open(schema_path)))
commands = ["describe", "check", "check-oracle", "flow", "lp", "realize", "shear", "stellate", "m3-check", "m3-normal"]
files = sorted(glob.glob(data + "/*.tri*"))

failures = 0
for command in commands:
    out = subprocess.run([tool, command, "--emit", "json", *files], capture_output=True, text=True).stdout
    for err in validator.iter_errors(json.loads(out)):
        failures += 1
        print(f"{command}: {err.json_path}: {err.message}")
print(f"{len(commands)} commands x {len(files)} files, {failures} schema errors")
sys.exit(1 if failures else 0)
