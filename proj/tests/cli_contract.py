"""Runs the CLI on fixed inputs; checks exit codes and validates every line."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)
workdir = tempfile.mkdtemp()
instance = os.path.join(workdir, "instance.json")

CASES = [
    (["hilbert", "-a", "-1", "-b", "-1", "-v", "p:2"], 0, lambda p: p["symbol"] == -1),
    (["hilbert", "-a", "-1", "-b", "-1", "-v", "real"], 0, lambda p: p["symbol"] == -1),
    (["hilbert", "-a", "t", "-b", "t+1", "-v", "div:t", "--field", "F3(t)"], 0, None),
    (["isotropy", "--field", "Q", "--form", "<<-1,-1]]"], 0,
     lambda p: not p["isotropic"] and p["ramification"] == ["p:2", "real"]),
    (["isotropy", "--field", "Q", "--form", "<<1,7]]", "--witness-budget", "5"], 0, lambda p: p["isotropic"]),
    (["isotropy", "--field", "F3(t)", "--form", "<<t,-1]]", "--place", "div:t"], 0, None),
    (["isotropy", "--field", "Q(t)", "--form", "<<t,15,2]]", "--place", "comp:div:t/p:3"], 0,
     lambda p: not p["isotropic"]),
    (["isotropy", "--field", "F7", "--form", "<<3,3]]"], 0, lambda p: p["isotropic"]),
    (["spred", "--field", "F5", "--c", "2", "--form", "<<2]]", "--x", "0"], 0, None),
    (["spred", "--field", "Q", "--c", "1", "--form", "<<5,2]]", "--x", "5", "--mode", "henselian",
      "--place", "p:5"], 0, lambda p: p["member"] == "member"),
    (["spred", "--field", "Q(t)", "--c", "11", "--form", "<<t,15,2]]", "--x", "t"], 0, None),
    (["delta0", "-a", "15", "-b", "2"], 0, lambda p: p["places"] == ["p:3", "p:5"]),
    (["locus", "--form", "<<t,15,2]]"], 0, lambda p: len(p["places"]) == 4),
    (["ring-check", "--make", "<<t,15,2]]", "--save", instance], 0, None),
    (["ring-check", "--instance", instance, "--x", "t^2+1"], 0, lambda p: p["agree"]),
    (["ring-check", "--instance", instance, "--x", "1/t"], 0, lambda p: p["lhs"] is False and p["agree"]),
    (["formula", "emit", "--fold", "1", "--char", "0"], 0, lambda p: p["quantifiers"] == 8),
    (["formula", "emit", "--fold", "2", "--char", "2"], 0, None),
    (["formula", "eval", "--field", "F5", "--assign", "x=3,c=1,a1=2"], 0,
     lambda p: p["value"] == p["direct_member"]),
    (["formula", "eval", "--field", "F5", "--assign", "x=4", "--formula", "E y. y*y = x"], 0, lambda p: p["value"]),
    (["formula", "eval", "--field", "F3", "--formula", "A x. E y. x + y = 0"], 0, lambda p: p["value"]),
    (["witness", "--field", "Q", "--form", "<<1,3]]", "--budget", "5"], 0, lambda p: p["found"]),
    (["witness", "--field", "F5", "--form", "<<2]]", "--etale", "0,2"], 0, lambda p: p["found"]),
    (["selftest"], 0, lambda p: p["passed"]),
    # errors
    ([], 64, None),
    (["nope"], 64, None),
    (["hilbert", "-a", "1"], 64, None),
    (["formula", "emit", "--fold", "1", "--char", "1"], 64, None),
    (["hilbert", "-a", "x", "-b", "1", "-v", "p:3"], 1, None),
    (["isotropy", "--field", "Q", "--form", "<<0,1]]"], 1, None),
    (["formula", "eval", "--field", "F5", "--formula", "E y. y = w"], 1, None),
    (["ring-check", "--make", "<<t,-1,-1]]"], 1, None),
]

failures = 0
for args, code, check in CASES:
    proc = subprocess.run([cli] + args, capture_output=True, text=True, env=dict(os.environ))
    lines = [l for l in proc.stdout.splitlines() if l.strip()]
    problems = []
    if proc.returncode != code:
        problems.append(f"exit {proc.returncode}, expected {code}")
    if len(lines) != 1:
        problems.append(f"{len(lines)} output lines")
    for line in lines:
        obj = json.loads(line)
        for err in validator.iter_errors(obj):
            problems.append("schema: " + err.message)
        if check and obj["status"] == "ok" and not check(obj["payload"]):
            problems.append("payload check failed")
    if problems:
        failures += 1
        print("FAIL", args, problems, proc.stdout.strip()[:400])
    else:
        print("ok  ", args)

# a tampered instance file is rejected
with open(instance) as f:
    stored = json.load(f)
for field, value in [("c", "13"), ("big_c", "3"), ("locus", ["comp:div:t/p:3"])]:
    bad = dict(stored, **{field: value})
    path = os.path.join(workdir, "bad.json")
    with open(path, "w") as f:
        json.dump(bad, f)
    proc = subprocess.run([cli, "ring-check", "--instance", path, "--x", "t"], capture_output=True, text=True)
    obj = json.loads(proc.stdout)
    if proc.returncode != 1 or obj["status"] != "error" or list(validator.iter_errors(obj)):
        failures += 1
        print("FAIL tampered", field, proc.stdout.strip())
    else:
        print("ok   tampered", field, obj["error"]["kind"])

# budget from the environment
env = dict(os.environ, PFISTERLAB_BUDGET="3")
proc = subprocess.run([cli, "witness", "--field", "Q", "--form", "<<1,3]]"], capture_output=True, text=True, env=env)
if json.loads(proc.stdout)["payload"].get("budget") != 3:
    failures += 1
    print("FAIL PFISTERLAB_BUDGET ignored")
env["PFISTERLAB_BUDGET"] = "lots"
proc = subprocess.run([cli, "witness", "--field", "Q", "--form", "<<1,3]]"], capture_output=True, text=True, env=env)
if proc.returncode != 64:
    failures += 1
    print("FAIL bad PFISTERLAB_BUDGET exit", proc.returncode)

print(f"{len(CASES) + 5 - failures}/{len(CASES) + 5} passed")
sys.exit(1 if failures else 0)
