#!/usr/bin/env python3
"""Builds data/emotion_lexicon.tsv (word<TAB>label) from hand-written lists.

Labels are the seven emotion classes used by the emotion provider.
"""
import pathlib

LISTS = {
    "anger": "anger angry angrier furious rage raging outrage outraged outrageous hate hated hateful hatred "
             "mad annoyed annoying irritated hostile attack attacked attacking fury livid resent resentment "
             "disgrace shame shameful blame blamed condemn condemned violence violent brutal murderers",
    "disgust": "disgust disgusted disgusting gross vile sick sickening revolting repulsive nasty filthy "
               "awful horrible horrid appalling appalled nauseating despicable foul creepy",
    "fear": "fear feared fearful afraid scared scary terrified terrifying terror terrorist terrorists panic "
            "panicked frightened frightening horror horrified threat threatened threatening danger dangerous "
            "worried worry worrying anxious nervous alarm alarming hostage hostages gunman gunmen siege "
            "evacuate evacuated lockdown bomb explosion shooting shots gunfire",
    "joy": "joy joyful happy happiness glad delighted delight love loved lovely wonderful great awesome "
           "amazing celebrate celebrating celebration cheer cheers excited exciting fun smile smiling "
           "grateful thankful thanks relieved relief proud hope hopeful safe",
    "neutral": "said says report reports reported according statement update updates announced announce "
               "confirm confirmed official officials spokesman spokesperson press conference details "
               "information source sources via news meanwhile today",
    "sadness": "sad sadness sorrow grief grieving mourn mourning mourners cry crying cried tears tragic "
               "tragedy heartbroken heartbreaking devastated devastating loss lost miss missing victim "
               "victims dead died death deaths killed funeral rip condolences pray prayers",
    "surprise": "surprise surprised surprising shock shocked shocking unbelievable unexpected sudden "
                "suddenly wow whoa omg astonishing astonished stunned stunning incredible secret "
                "mysterious mystery disappeared disappearance",
}


def main():
    rows = []
    seen = set()
    for label in sorted(LISTS):
        for word in LISTS[label].split():
            if word in seen:
                raise SystemExit(f"duplicate word {word}")
            seen.add(word)
            rows.append((word, label))
    rows.sort()
    out = pathlib.Path(__file__).resolve().parent.parent / "emotion_lexicon.tsv"
    with out.open("w") as f:
        f.write("# word\tlabel\n")
        for word, label in rows:
            f.write(f"{word}\t{label}\n")


if __name__ == "__main__":
    main()
