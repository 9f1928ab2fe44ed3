"""End-to-end checks of the ptsusy executable: schema, determinism, exit codes."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

EXE, SCHEMA = sys.argv[1], json.loads(Path(sys.argv[2]).read_text())
failures = []


def run(*args):
    return subprocess.run([EXE, *args], capture_output=True, check=False)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def validate(doc, what):
    try:
        jsonschema.validate(doc, SCHEMA, cls=jsonschema.Draft202012Validator)
        check(True, what)
    except jsonschema.ValidationError as e:
        check(False, f"{what}: {e.message}")


cases = {
    "spectrum": ["spectrum", "--nu", "1", "--beta", "2", "--m", "2", "--n", "3", "--gap-factors"],
    "wavefn": ["wavefn", "--nu", "1", "--beta", "2", "--m", "1", "--n", "2", "--grid", "21"],
    "verify": ["verify", "--m", "1", "--n", "1", "--grid", "21"],
    "coherent": ["coherent", "--m", "1", "--grid", "5"],
}

for name, args in cases.items():
    a = run(*args, "--format", "json")
    b = run(*args, "--format", "json")
    check(a.returncode == 0, f"{name} json exits 0")
    check(a.stdout == b.stdout, f"{name} json is byte-identical across runs")
    validate(json.loads(a.stdout), f"{name} report validates against the schema")
    c = run(*args)
    d = run(*args)
    check(c.stdout == d.stdout, f"{name} csv is byte-identical across runs")
    check(b"\r" not in c.stdout, f"{name} csv uses LF line endings")

default = run("verify")
check(default.returncode == 0, "verify with the default config exits 0")

neg = run("verify", "--m", "1", "--n", "1", "--grid", "21", "--negative-control", "--format", "json")
check(neg.returncode != 0, "negative control exits nonzero")
report = json.loads(neg.stdout)
validate(report, "negative-control report validates against the schema")
check(any(r["identity"] == "factorization" and not r["passed"] for r in report["results"]),
      "negative control fails the factorization identity")

with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "run.cfg"
    cfg.write_text("nu = 0\nbeta = 0\nn_max = 3\nm_max = 0\n")
    out = Path(tmp) / "spectrum.csv"
    r = run("spectrum", "--config", str(cfg), "--out", str(out))
    check(r.returncode == 0 and out.exists(), "--config and --out write the report file")
    rows = out.read_text().splitlines()[2:]
    check(len(rows) == 4, "config file bounds are honoured")
    r2 = run("spectrum", "--config", str(cfg), "--n", "1")
    check(len(r2.stdout.decode().splitlines()) == 4, "flags override the config file")
    bad = Path(tmp) / "bad.cfg"
    bad.write_text("nu = 1\nbeta = oops\n")
    r3 = run("spectrum", "--config", str(bad))
    check(r3.returncode == 2 and b"line 2" in r3.stderr and b"beta" in r3.stderr,
          "config errors report line and field with exit 2")

sys.exit(1 if failures else 0)
