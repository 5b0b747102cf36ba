"""Validate `verify --all --json` output against the report schema."""
import json
import subprocess
import sys

import jsonschema


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    for args in (["verify", "--all", "--json"], ["verify", "ramanujan_3f2", "--json"]):
        proc = subprocess.run([binary, *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"{' '.join(args)}: exit {proc.returncode}\n{proc.stderr}")
            return 1
        jsonschema.validate(json.loads(proc.stdout), schema)
        print(f"{' '.join(args)}: valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
