#!/usr/bin/env python3
"""Independent recomputation of the fixture tables from the per-tweet
feature matrix (tests/golden/fixture/features.csv): population means, KS
statistics per event and pooled, emotion percentages and partition counts.
Writes tests/data/fixture_aggregates_oracle.json."""
import csv
import json
import math
import pathlib
from collections import defaultdict
from fractions import Fraction

from scipy.special import kolmogorov

HERE = pathlib.Path(__file__).resolve().parent
FEATURES = HERE.parent / "golden" / "fixture" / "features.csv"
OUT = HERE.parent / "data" / "fixture_aggregates_oracle.json"
POPS = ["r_src", "nr_src", "r_re", "nr_re"]
LABELS = ["anger", "disgust", "fear", "joy", "neutral", "sadness", "surprise"]


def population(row):
    return ("r" if row["label"] == "rumour" else "nr") + ("_src" if row["role"] == "source" else "_re")


def ks(a, b):
    a, b = sorted(a), sorted(b)
    d = Fraction(0)
    for v in set(a) | set(b):
        fa = Fraction(sum(1 for x in a if x <= v), len(a))
        fb = Fraction(sum(1 for x in b if x <= v), len(b))
        d = max(d, abs(fa - fb))
    ne = len(a) * len(b) / (len(a) + len(b))
    s = math.sqrt(ne)
    lam = (s + 0.12 + 0.11 / s) * float(d)
    return float(d), float(kolmogorov(lam)) if d > 0 else 1.0


def main():
    with open(FEATURES, newline="") as fh:
        reader = csv.DictReader(fh)
        names = [c for c in reader.fieldnames[4:] if not c.endswith("__absent")]
        rows = list(reader)
    values = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))  # event -> pop -> feature -> [Fraction]
    counts = defaultdict(lambda: dict.fromkeys(POPS, 0))
    emotions = defaultdict(lambda: defaultdict(list))
    for r in rows:
        pop = population(r)
        counts[r["event"]][pop] += 1
        for n in names:
            if r[n + "__absent"] == "0":
                values[r["event"]][pop][n].append(Fraction(r[n]))
        emo = [r.get("emotion." + l, "") for l in LABELS]
        if all(e != "" for e in emo):
            scores = [float(e) for e in emo]
            emotions[r["event"]][pop].append(max(range(7), key=lambda i: (scores[i], -i)))
    events = sorted(counts)
    for e in events:
        for p in POPS:
            for n in names:
                values["aggregated"][p][n] += values[e][p][n]
            emotions["aggregated"][p] += emotions[e][p]

    means = {}
    for e in events + ["aggregated"]:
        for n in names:
            means[f"{n}|{e}"] = [float(sum(v) / len(v)) if (v := values[e][p][n]) else None for p in POPS]

    tests = {}
    for pair, (rp, np_) in (("sources", ("r_src", "nr_src")), ("reactions", ("r_re", "nr_re"))):
        for e in events + ["aggregated"]:
            for n in names:
                a, b = values[e][rp][n], values[e][np_][n]
                if not a or not b:
                    tests[f"{n}|{e}|{pair}"] = None
                    continue
                d, p = ks(a, b)
                tests[f"{n}|{e}|{pair}"] = {"n1": len(a), "n2": len(b), "d": d, "p": p, "significant": p < 0.05}

    emotion_table = {}
    for e in events + ["aggregated"]:
        for p in POPS:
            labels = emotions[e][p]
            emotion_table[f"{e}|{p}"] = {
                "n": len(labels),
                "percent": [100 * labels.count(i) / len(labels) for i in range(7)] if labels else None,
            }

    partitions = {e: counts[e] for e in events}
    OUT.write_text(json.dumps({"features": names, "events": events, "partitions": partitions, "means": means,
                               "ks": tests, "emotions": emotion_table}, indent=0, sort_keys=True) + "\n")
    print(len(names), "features,", len(tests), "tests")


if __name__ == "__main__":
    main()
