#!/usr/bin/env python3
"""Replays every NO certificate in a paper-verify report through
`k3lat qform verify`, one process per certificate."""

import json
import subprocess
import sys


def verdicts(report):
    for fam in report["families"]:
        for key in ("minus2", "isotropic"):
            yield f"family {fam['family']} {key}", fam["gram"], fam["report"][key]
    for c in report["claim3"]:
        if c["status"] != "FOUND":
            continue
        label = "claim3 ({A},{B},{C})".format(**c["input"])
        for key in ("zero", "minus2"):
            yield f"{label} {key}", c["gram"], c[key]
    th = report["theorem3_example"]
    if th["status"] == "FOUND":
        for key in ("zero", "minus2"):
            yield f"theorem3 {key}", th["gram"], th[key]


def main():
    k3lat = sys.argv[1]
    run = subprocess.run([k3lat, "paper-verify"], capture_output=True, text=True)
    if run.returncode != 0:
        print(run.stderr, file=sys.stderr)
        return 1
    report = json.loads(run.stdout)
    replayed = failed = 0
    for label, gram, verdict in verdicts(report):
        if verdict["kind"] != "NO":
            continue
        request = {"form": {"gram": gram}, "t": verdict["target"],
                   "certificate": verdict["certificate"]}
        check = subprocess.run([k3lat, "qform", "verify"], input=json.dumps(request),
                               capture_output=True, text=True)
        replayed += 1
        if check.returncode != 0 or not json.loads(check.stdout)["valid"]:
            failed += 1
            print(f"FAIL {label}: {verdict['certificate']['type']}", file=sys.stderr)
    print(f"replayed {replayed} NO certificates, {failed} failed")
    return 1 if failed or replayed == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
