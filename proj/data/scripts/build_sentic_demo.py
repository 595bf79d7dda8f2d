#!/usr/bin/env python3
"""Builds data/sentic_demo.csv, a synthetic 500-concept table in SenticNet CSV
layout (concept,pleasantness,attention,sensitivity,aptitude,polarity).

Values are invented for demonstration and tests; they are not SenticNet data.
Concept words come from a frequency-ordered English word list (first arg).
"""
import hashlib
import pathlib
import sys

POSITIVE = set("""good great love happy safe hope peace support thank celebrate win hero brave
help free calm proud best nice beautiful friend joy success rescue relief save protect
agree wonderful amazing""".split())
NEGATIVE = set("""bad kill attack dead death die shoot gun bomb hostage fear terror victim
hate crisis threat danger war fire crash police siege gunman violence injure wound sad
grief loss fake rumour hoax lie panic blood""".split())

PHRASES = {
    "celebrate_special_occasion": (0.8, 0.3, 0.1, 0.6, 0.75),
    "breaking_news": (0.0, 0.7, 0.4, 0.0, 0.1),
    "police_officer": (0.1, 0.4, 0.2, 0.3, 0.2),
    "hostage_situation": (-0.7, 0.6, 0.8, -0.5, -0.8),
    "shoot_dead": (-0.9, 0.5, 0.9, -0.8, -0.95),
    "press_conference": (0.0, 0.5, 0.1, 0.2, 0.05),
    "art_collection": (0.4, 0.3, 0.0, 0.5, 0.45),
    "secret_concert": (0.6, 0.7, 0.2, 0.4, 0.6),
    "pop_up_show": (0.5, 0.6, 0.1, 0.3, 0.5),
    "public_appearance": (0.1, 0.4, 0.0, 0.2, 0.15),
    "state_of_emergency": (-0.6, 0.8, 0.7, -0.4, -0.7),
    "not_confirm": (-0.2, 0.3, 0.3, -0.3, -0.3),
    "stay_safe": (0.5, 0.2, -0.2, 0.4, 0.55),
    "rest_in_peace": (-0.3, 0.1, 0.2, 0.3, -0.1),
    "fake_news": (-0.5, 0.4, 0.3, -0.6, -0.6),
    "take_hostage": (-0.8, 0.6, 0.8, -0.6, -0.85),
    "open_fire": (-0.8, 0.7, 0.8, -0.7, -0.85),
    "fire_alarm": (-0.3, 0.8, 0.5, -0.1, -0.35),
    "power_cut": (-0.4, 0.3, 0.3, -0.3, -0.4),
    "go_missing": (-0.5, 0.5, 0.6, -0.3, -0.55),
}


def h(text, salt):
    d = hashlib.sha256(f"{salt}:{text}".encode()).digest()
    return int.from_bytes(d[:8], "big") / 2**64


def fmt(v):
    s = repr(round(v, 3))
    if s.endswith(".0"):
        s = s[:-2]
    if s == "-0":
        s = "0"
    return s


def values(word):
    if word in POSITIVE:
        base = 0.4 + 0.5 * h(word, "p")
    elif word in NEGATIVE:
        base = -0.4 - 0.5 * h(word, "p")
    else:
        base = 0.3 * (h(word, "p") - 0.5)
    pleas = max(-1.0, min(1.0, base + 0.1 * (h(word, "a") - 0.5)))
    att = 1.6 * (h(word, "b") - 0.5)
    sens = max(-1.0, min(1.0, -0.6 * base + 0.4 * (h(word, "c") - 0.5)))
    apt = max(-1.0, min(1.0, 0.8 * base + 0.3 * (h(word, "d") - 0.5)))
    pol = max(-1.0, min(1.0, (pleas + abs(att) * 0 + apt - sens) / 3 + 0.5 * base))
    return pleas, att, sens, apt, pol


def main():
    stop = {w.strip() for w in (pathlib.Path(__file__).resolve().parent.parent / "stopwords.txt").read_text().splitlines()
            if w and not w.startswith("#")}
    words = [w.strip() for w in open(sys.argv[1]) if w.strip()]
    table = dict(PHRASES)
    for w in sorted(POSITIVE | NEGATIVE):
        table[w] = values(w)
    for w in words:
        if len(table) >= 500:
            break
        if w in stop or len(w) < 3 or w in table:
            continue
        table[w] = values(w)
    assert len(table) == 500, len(table)
    out = pathlib.Path(__file__).resolve().parent.parent / "sentic_demo.csv"
    with out.open("w") as f:
        f.write("concept,pleasantness,attention,sensitivity,aptitude,polarity\n")
        for concept in sorted(table):
            vals = table[concept]
            assert all(-1 <= v <= 1 for v in vals), concept
            f.write(concept + "," + ",".join(fmt(v) for v in vals) + "\n")


if __name__ == "__main__":
    main()
