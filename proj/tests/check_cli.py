#!/usr/bin/env python3
"""CLI checks: schema validity, rerun determinism, exit codes, small exact values."""

import json
import math
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI = sys.argv[1]
ROOT = sys.argv[2]
SCHEMAS = os.path.join(ROOT, "schemas")
MASKS = os.path.join(ROOT, "masks")

failures = []


def check(ok, what):
    print(("[PASS] " if ok else "[FAIL] ") + what)
    if not ok:
        failures.append(what)


def run(args, expect=0):
    p = subprocess.run([CLI] + args, capture_output=True, text=True)
    check(p.returncode == expect, f"exit {p.returncode} (want {expect}): {' '.join(args)}")
    return p


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def validate(doc, name, what):
    try:
        jsonschema.validate(doc, schema(name))
        check(True, f"{what} validates against {name}")
    except jsonschema.ValidationError as e:
        check(False, f"{what} validates against {name}: {e.message}")


def strip(j):
    if isinstance(j, dict):
        return {k: strip(v) for k, v in j.items() if k != "timestamp"}
    if isinstance(j, list):
        return [strip(v) for v in j]
    return j


def json_command(args, name):
    first = run(args)
    if first.returncode != 0:
        return None
    doc = json.loads(first.stdout)
    validate(doc, name, args[0])
    second = json.loads(run(args).stdout)
    check(strip(doc) == strip(second), f"rerun identical: {args[0]}")
    return doc


def main():
    tmp = tempfile.mkdtemp(prefix="loopforge_cli_")

    census = json_command(["enumerate", "--n", "1", "--colors", "2"], "census")
    if census:
        check(census["census"]["size"] == 3, "enumerate n=1 c=2 has 3 configurations")
    census = json_command(["enumerate", "--n", "2", "--colors", "1", "--oracle"], "census")
    if census:
        check(census["census"]["size"] == 14 and census["census"]["oracle_equal"], "enumerate n=2 c=1 matches oracle")
    json_command(["enumerate", "--n", "1", "--decorated", "--d", "1", "--u", "1"], "census")

    dump = os.path.join(tmp, "gs.jsonl")
    gs = json_command(["groundstate", "--n", "2", "--colors", "2", "--t", "1.2", "--dump", dump], "groundstate")
    if gs:
        with open(dump) as f:
            lines = [json.loads(line) for line in f]
        validate(lines[0], "ensemble_dump", "dump header")
        for rec in lines[1:]:
            jsonschema.validate(rec, schema("ensemble_record"))
        check(len(lines) - 1 == gs["stats"]["size"], "dump has one record per basis label")
    json_command(["groundstate", "--n", "2", "--colors", "2", "--t", "0.8", "--uncolored"], "groundstate")

    en = json_command(["entropy", "--n", "1", "--colors", "2", "--t", "1", "--cut", "links:2,0", "--method", "both"],
                      "entropy")
    if en:
        values = [r["s_nats"] for r in en["reports"]]
        check(len(values) == 2 and all(abs(v - math.log(3)) < 1e-12 for v in values), "n=1 entropy is ln 3 both ways")
    json_command(["entropy", "--n", "3", "--colors", "2", "--t", "1", "--cut", "vertical:1", "--method", "both",
                  "--full-p"], "entropy")
    json_command(["entropy", "--n", "3", "--colors", "1", "--t", "1.3", "--cut", os.path.join(MASKS, "disc_n3_center.txt"),
                  "--uncolored"], "entropy")

    tee = json_command(["tee", "--n", "3", "--colors", "2", "--t", "1", "--mask", os.path.join(MASKS, "kp_n3.txt"),
                        "--prescription", "kp", "--check-theorem"], "tee")
    if tee:
        check(abs(tee["theorem"]["identity_residual"]) < 1e-9, "tee loop-statistic identity holds")

    export = os.path.join(tmp, "h.txt")
    ham = json_command(["hamiltonian", "--n", "2", "--colors", "1", "--t", "1.3", "--verify", "--export", export],
                       "hamiltonian")
    if ham:
        check(ham["hamiltonian"]["ground_space"]["dim"] == 1, "hamiltonian n=2 ground space is one-dimensional")
        check(os.path.exists(export) and os.path.exists(export + ".labels"), "hamiltonian export files written")

    mz_args = ["motzkin", "--len", "6", "--d", "2", "--u", "1", "--cut", "half", "--sweep", "len:4:8:2"]
    a, b = run(mz_args), run(mz_args)
    if a.returncode == 0:
        head, _, body = a.stdout.partition("\n")
        check(head.startswith("# manifest: "), "motzkin CSV starts with its manifest")
        validate(json.loads(head[len("# manifest: "):]), "motzkin_manifest", "motzkin manifest")
        check(body == b.stdout.partition("\n")[2], "rerun identical: motzkin")
        check(body.splitlines()[0] == "len,d,u,cut,s_labels,s_svd,label_count", "motzkin CSV header")

    trace = os.path.join(tmp, "trace.csv")
    sample_args = ["sample", "--n", "3", "--colors", "2", "--t", "1.5", "--sweeps", "3000", "--burn-in", "300",
                   "--chains", "2", "--seed", "11", "--estimate", "height,ell,regions:" + os.path.join(MASKS, "kp_n3.txt"),
                   "--trace", trace]
    est = json_command(sample_args, "estimate")
    if est:
        names = {e["name"] for e in est["estimators"]}
        check({"V", "loops", "ell", "h0"} <= names, "sample reports volume, loops, ell and heights")
        check(est["manifest"]["seed"] == 11, "sample manifest records the seed")
    threaded = run(["--threads", "2"] + sample_args)
    if est and threaded.returncode == 0:
        check(strip(json.loads(threaded.stdout)) == strip(est), "sample output independent of --threads")

    bits = run(["--bits", "entropy", "--n", "1", "--colors", "2", "--t", "1", "--cut", "links:2,0"])
    if bits.returncode == 0:
        doc = json.loads(bits.stdout)
        validate(doc, "entropy", "entropy --bits")
        check(all(abs(r["s_bits"] - math.log2(3)) < 1e-12 for r in doc["reports"]), "--bits reports log2 3 at n=1")
    mzb = run(["--bits"] + mz_args)
    if mzb.returncode == 0:
        check(mzb.stdout.splitlines()[1].endswith(",s_labels_bits,s_svd_bits"), "motzkin --bits adds bit columns")

    suite_json = os.path.join(tmp, "acceptance.json")
    suite = run(["suite", "acceptance", "--only", "3", "--json", suite_json])
    if suite.returncode == 0:
        with open(suite_json) as f:
            validate(json.load(f), "acceptance", "suite acceptance --json")
        check("[PASS]  3" in suite.stdout, "suite prints one line per criterion")
    run(["suite", "acceptance", "--only", "12"], expect=2)
    run(["suite", "nosuch"], expect=2)

    out = os.path.join(tmp, "census.json")
    run(["--out", out, "enumerate", "--n", "1", "--colors", "1"])
    with open(out) as f:
        validate(json.load(f), "census", "--out file")

    run(["enumerate", "--n", "2", "--colors", "2", "--uncolored", "--decorated"], expect=2)
    run(["enumerate"], expect=2)
    run(["entropy", "--n", "2", "--colors", "2", "--t", "1", "--cut", "vertical:9"], expect=2)
    bad = os.path.join(tmp, "bad.txt")
    with open(bad, "w") as f:
        f.write("ABX\n")
    run(["entropy", "--n", "2", "--colors", "2", "--t", "1", "--cut", bad], expect=2)
    run(["sample", "--n", "2", "--colors", "2", "--t", "1", "--sweeps", "10", "--burn-in", "20", "--chains", "1",
         "--seed", "1"], expect=2)
    run(["hamiltonian", "--n", "4", "--colors", "4", "--t", "1"], expect=3)
    run(["motzkin", "--len", "40", "--d", "3", "--u", "1", "--cut", "half"], expect=3)

    for sub in ["enumerate", "groundstate", "entropy", "tee", "hamiltonian", "motzkin", "sample"]:
        p = subprocess.run([CLI, sub, "--help"], capture_output=True, text=True)
        check(p.returncode == 0, f"{sub} --help")
    top = subprocess.run([CLI, "--help"], capture_output=True, text=True).stdout
    check("nats" in top and "counterclockwise" in top and "face" in top, "--help documents units and conventions")

    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
