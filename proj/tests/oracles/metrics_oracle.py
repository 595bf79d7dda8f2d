#!/usr/bin/env python3
"""Precision/recall/F1 under weighted, macro and binary averaging from
scikit-learn for a set of confusion matrices. Writes
tests/data/metrics_reference.json."""
import json
import pathlib

from sklearn.metrics import accuracy_score, precision_recall_fscore_support

OUT = pathlib.Path(__file__).resolve().parents[1] / "data" / "metrics_reference.json"
MATRICES = [[[8, 2], [1, 9]], [[10, 0], [0, 10]], [[3, 7], [0, 0]], [[0, 4], [0, 6]], [[40, 5], [12, 3]],
            [[1, 0], [5, 94]], [[0, 0], [3, 2]]]


def expand(cm):
    y_true, y_pred = [], []
    for actual in range(2):
        for pred in range(2):
            y_true += [actual] * cm[actual][pred]
            y_pred += [pred] * cm[actual][pred]
    return y_true, y_pred


def main():
    cases = []
    for cm in MATRICES:
        y_true, y_pred = expand(cm)
        case = {"confusion": cm, "accuracy": accuracy_score(y_true, y_pred)}
        for avg in ("weighted", "macro", "binary"):
            p, r, f, _ = precision_recall_fscore_support(y_true, y_pred, average=avg, labels=[0, 1], pos_label=1,
                                                         zero_division=0)
            case[avg] = {"precision": float(p), "recall": float(r), "f1": float(f)}
        cases.append(case)
    OUT.write_text(json.dumps({"cases": cases}, indent=1) + "\n")
    print(len(cases), "cases")


if __name__ == "__main__":
    main()
