"""End-to-end checks of the homct CLI: exit codes, schema validity, determinism."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI = sys.argv[1]
ROOT = pathlib.Path(sys.argv[2])
FIX = ROOT / "fixtures"
SCHEMAS = {name: json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text())
           for name in ("algebra", "module", "report")}
failures = []


def check(cond, what):
    if not cond:
        failures.append(what)


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def validate(doc, schema, what):
    try:
        jsonschema.validate(doc, SCHEMAS[schema])
    except jsonschema.ValidationError as e:
        failures.append(f"{what}: {e.message}")


for f in sorted(FIX.glob("*.json")):
    validate(json.loads(f.read_text()), "module" if "_" in f.stem else "algebra", f.name)

a1 = [f"--algebra={FIX / 'a1.json'}", f"--module-m={FIX / 'a1_k_right.json'}",
      f"--module-n={FIX / 'a1_k_left.json'}"]
r = run("compare", *a1, "--degrees=-4..4")
check(r.returncode == 0, f"compare A1 exit {r.returncode}: {r.stderr}")
rep = json.loads(r.stdout)
validate(rep, "report", "compare A1")
check(rep["all_agree"] is True, "compare A1 all_agree")
check(all(x["complete"]["limit_dim"] == 1 for x in rep["results"]), "compare A1 dims")

r2 = run("compare", *a1, "--degrees=-4..4")
check(json.loads(r2.stdout)["report_hash"] == rep["report_hash"], "compare A1 hash is deterministic")

for theory in ("tor", "ext", "tate", "stable", "complete"):
    args = a1 if theory != "ext" else [a1[0], f"--module-m={FIX / 'a1_k_left.json'}", a1[2]]
    r = run("compute", *args, f"--theory={theory}", "--degrees=-1..2")
    check(r.returncode == 0, f"compute {theory} exit {r.returncode}: {r.stderr}")
    validate(json.loads(r.stdout), "report", f"compute {theory}")

r = run("compare", "--algebra=A2", "--module-m=k", "--module-n=k", "--degrees=-1..1", "--depth=3")
check(r.returncode == 0, "certification failures alone do not fail the run")
rep = json.loads(r.stdout)
validate(rep, "report", "compare A2")
check(rep["tate"]["certified"] is False, "A2 tate not certified")

r = run("compute", "--algebra=A3", "--module-m=R/(x)", "--module-n=R/(y)", "--theory=complete",
        "--degrees=-2..2", "--format=csv")
check(r.returncode == 0 and r.stdout.startswith("theory,degree,dim,verdict,limit_dim,dims\n"), "csv output")
check(r.stdout.count(",Stabilized,0,") == 5, "A3 csv values")

with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp) / "corpus.json"
    r = run("corpus", "--seed=1", "--count=5", "--algebras=A1,A4", f"--out={out}")
    check(r.returncode == 0, f"corpus exit {r.returncode}: {r.stderr}")
    rep = json.loads(out.read_text())
    validate(rep, "report", "corpus")
    r = run("corpus", "--seed=1", "--count=5", "--algebras=A1,A4")
    check(json.loads(r.stdout)["report_hash"] == rep["report_hash"], "corpus hash is deterministic")

    r = run("dump-resolution", "--algebra=A2", "--module=k", "--depth=3")
    check(r.returncode == 0, "dump-resolution exit")
    rep = json.loads(r.stdout)
    validate(rep, "report", "dump-resolution")
    check([b[0] for b in rep["resolution"]["betti"]] == [1, 2, 4, 8], "A2 Betti numbers")

    bad = pathlib.Path(tmp) / "bad.json"
    bad.write_text(json.dumps({"p": 2, "dim": 2, "basis": ["1", "x"], "unit": [1, 0],
                               "mul": [[[1, 0], [0, 1]], [[0, 1]]]}))
    r = run("compare", f"--algebra={bad}", "--module-m=k", "--module-n=k")
    check(r.returncode == 2 and "$.mul[1]" in r.stderr, f"malformed algebra diagnostic: {r.stderr}")

    badmod = pathlib.Path(tmp) / "badmod.json"
    badmod.write_text(json.dumps({"algebra": "A1", "side": "left", "dim": 1, "action": [[[0]], [[0]]]}))
    r = run("compute", "--algebra=A1", "--module-m=k", f"--module-n={badmod}", "--theory=tor")
    check(r.returncode == 2 and "rho(unit) != id" in r.stderr, f"unit axiom diagnostic: {r.stderr}")

r = run("compute", "--algebra=A1", "--module-m=k", "--module-n=k", "--depth=1", "--window=2")
check(r.returncode == 2, "depth below window is rejected")
r = run("frobnicate")
check(r.returncode == 2, "unknown subcommand is a usage error")

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
