#!/usr/bin/env python3
"""End-to-end checks of the phwo command-line tool.

Covers the output contract rather than the numerics (the C++ suites do
that): deterministic reruns, manifest round trips, config files in both
flavors, flag precedence, and the error JSON shape.
"""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

PHWO = Path(sys.argv[1]).resolve()
failures = []


def check(name, ok, detail=""):
    print(f"{'ok' if ok else 'FAIL'}  {name}  {detail}")
    if not ok:
        failures.append(name)


def run(*args, cwd, expect_rc=0):
    proc = subprocess.run([str(PHWO), *args], cwd=cwd, capture_output=True,
                          text=True, timeout=300)
    if proc.returncode != expect_rc:
        raise RuntimeError(
            f"{args}: rc={proc.returncode}, stderr={proc.stderr.strip()}")
    return proc


def payload(path):
    # CSV body incl. the embedded config hash line; manifests are the only
    # files allowed to differ between reruns (timestamp)
    return Path(path).read_bytes()


with tempfile.TemporaryDirectory() as tmp:
    # closed-form spot check through the full stack
    p = run("spectrum", "--problem", "plain_hw", "--n", "1", "--out", "s1",
            cwd=tmp)
    summary = json.loads(p.stdout)
    check("spectrum gap closed form",
          math.isclose(summary["min_gap"], math.sqrt(0.5), rel_tol=1e-9)
          and abs(summary["s_at_min_gap"] - 0.5) < 1e-4,
          f"min_gap={summary['min_gap']:.12f}")

    manifest = json.loads(Path(tmp, "s1.manifest.json").read_text())
    first_line = Path(tmp, "s1.csv").read_text().splitlines()[0]
    check("csv embeds manifest hash",
          manifest["config_hash"] in first_line, first_line)

    # byte-identical rerun of a deterministic solver command
    run("evolve-qa", "--problem", "plateau", "--n", "32", "--u", "6",
        "--tf", "5", "--samples", "16", "--out", "eq1", cwd=tmp)
    run("evolve-qa", "--problem", "plateau", "--n", "32", "--u", "6",
        "--tf", "5", "--samples", "16", "--out", "eq2", cwd=tmp)
    check("evolve-qa rerun byte-identical",
          payload(Path(tmp, "eq1.csv")) == payload(Path(tmp, "eq2.csv")))

    # byte-identical rerun of a seeded Monte Carlo ensemble
    sa_args = ("run-sa", "--problem", "plateau", "--n", "16", "--u", "3",
               "--sweeps", "500", "--seeds", "40")
    run(*sa_args, "--out", "sa1", cwd=tmp)
    run(*sa_args, "--out", "sa2", cwd=tmp)
    check("run-sa rerun byte-identical",
          payload(Path(tmp, "sa1.csv")) == payload(Path(tmp, "sa2.csv")))

    # flat key=value config file
    Path(tmp, "run.cfg").write_text(
        "# comment\nproblem = plateau\nn = 24\nu = 4\npoints = 7\nout = g1\n")
    run("gibbs", "--manifest", "run.cfg", cwd=tmp)
    rows = Path(tmp, "g1.csv").read_text().splitlines()
    check("key=value config applied", len(rows) == 2 + 7 and
          math.isclose(float(rows[2].split(",")[1]), 12.0, rel_tol=1e-12),
          f"rows={len(rows)}")

    # JSON config (shape of an emitted manifest) plus a flag override
    Path(tmp, "run.json").write_text(json.dumps({
        "problem": {"problem": "plateau", "n": 24, "u": 4},
        "params": {"points": 7}, "out": "g2"}))
    run("gibbs", "--manifest", "run.json", cwd=tmp)
    check("json config matches key=value run",
          payload(Path(tmp, "g1.csv")) == payload(Path(tmp, "g2.csv")))

    run("gibbs", "--manifest", "run.json", "--n", "12", "--out", "g3", cwd=tmp)
    hw0 = float(Path(tmp, "g3.csv").read_text().splitlines()[2].split(",")[1])
    check("flags override config file", math.isclose(hw0, 6.0, rel_tol=1e-12),
          f"hw(beta=0)={hw0}")

    # machine-readable errors, nonzero exit
    for name, args in [("unknown problem", ("spectrum", "--problem", "wat")),
                       ("unknown figure", ("reproduce", "nope")),
                       ("bad grid", ("tts", "--tf-grid", "oops"))]:
        proc = run(*args, cwd=tmp, expect_rc=2)
        try:
            err = json.loads(proc.stderr.strip().splitlines()[-1])
            ok = "error" in err and "message" in err
        except json.JSONDecodeError:
            ok = False
        check(f"error json for {name}", ok, proc.stderr.strip()[:60])

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
