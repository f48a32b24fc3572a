#!/usr/bin/env python3
"""Runs every ghzt command and validates its output against the shipped schemas.

usage: validate_outputs.py <ghzt binary> <schemas dir>
"""

import csv
import io
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

COMMANDS = {
    "teleport": ["--seed", "4", "teleport", "--n", "3", "--s", "1", "--t", "101", "--a", "0.8", "--b", "0.6",
                 "--alpha", "0.6", "--beta", "0.8", "--trials", "500"],
    "povm-audit": ["povm-audit", "--n", "2", "--a", "0.8", "--b", "0.6"],
    "sweep": ["--seed", "4", "sweep", "--steps", "6", "--trials", "500"],
    "efficiency": ["efficiency", "--n-max", "20"],
    "error-compare": ["--seed", "4", "error-compare", "--trials", "20000", "--bitflip-trials", "200000"],
}

CHAIN_RUNS = [
    ["--seed", "4", "chain", "--n", "2", "--eve-trials", "500"],
    ["--seed", "5", "chain", "--a", "0.8", "--b", "0.6", "--p-ghz", "0.3", "--eve", "stationary-bias",
     "--eve-trials", "500"],
    ["--seed", "6", "chain", "--n", "1", "--a", "0.99999999995", "--b", "0.00001", "--p-ghz", "1",
     "--max-attempts", "1", "--eve-trials", "5"],
]


def run(binary, args, expect_code=0):
    proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
    if proc.returncode != expect_code:
        raise AssertionError(f"{args}: exit {proc.returncode}, stderr: {proc.stderr}")
    return proc.stdout


def main():
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(body)) for name, body in schemas.items())
    failures = 0

    def validator(name):
        return jsonschema.Draft202012Validator(schemas[name], registry=registry)

    for command, args in COMMANDS.items():
        before = failures
        name = f"{command}.schema.json"
        doc = json.loads(run(binary, ["--format", "json", *args]))
        errors = list(validator(name).iter_errors(doc))
        for e in errors:
            print(f"FAIL {command} json: {e.message} at {list(e.absolute_path)}")
        failures += len(errors)

        broken = json.loads(json.dumps(doc))
        broken["rows"][0]["unexpected"] = 1
        if validator(name).is_valid(broken):
            print(f"FAIL {command}: schema accepts an unknown column")
            failures += 1

        text = run(binary, args)
        comments = [line for line in text.splitlines() if line.startswith("#")]
        body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
        header = next(csv.reader(io.StringIO(body)))
        expected = list(schemas[name]["properties"]["rows"]["items"]["properties"])
        if header != expected:
            print(f"FAIL {command} csv header {header} != {expected}")
            failures += 1
        if not comments or not comments[0].startswith("# tool: ghzt "):
            print(f"FAIL {command} csv lacks the metadata block")
            failures += 1
        if "\r" in text:
            print(f"FAIL {command} csv has CR line endings")
            failures += 1
        if failures == before:
            print(f"ok {command}")

    chain_validator = validator("chain-line.schema.json")
    for i, args in enumerate(CHAIN_RUNS):
        before = failures
        aborted = "--max-attempts" in args
        text = run(binary, args, expect_code=2 if aborted else 0)
        lines = [json.loads(line) for line in text.splitlines()]
        kinds = [line["type"] for line in lines]
        if kinds[0] != "metadata" or kinds[-2:] != ["summary", "eve"]:
            print(f"FAIL chain run {i}: line order {kinds}")
            failures += 1
        for line in lines:
            for e in chain_validator.iter_errors(line):
                print(f"FAIL chain run {i} {line['type']} line: {e.message}")
                failures += 1
        if failures == before:
            print(f"ok chain run {i}")

    print("schema validation " + ("passed" if failures == 0 else f"failed ({failures})"))
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
