#!/usr/bin/env python3
"""Converts the pattern/TextBlob en-sentiment.xml lexicon (PDDL) into the
tab-separated lexicon format read by mediakg.

Senses of the same word form are averaged, the way the pattern scorer does.

    python3 tools/make_lexicon.py en-sentiment.xml > data/default_lexicon.tsv
"""
import sys
import xml.etree.ElementTree as ET
from collections import defaultdict

NEGATORS = ["not", "no", "never", "nor", "neither", "nobody", "nothing",
            "none", "cannot", "n't", "don't", "doesn't", "didn't", "isn't",
            "aren't", "wasn't", "weren't", "won't", "wouldn't", "can't",
            "couldn't", "shouldn't", "hasn't", "haven't", "hadn't"]


def main(path):
    senses = defaultdict(list)
    for word in ET.parse(path).getroot().iter("word"):
        form = word.get("form", "").strip().lower()
        if not form or " " in form or "\t" in form:
            continue
        senses[form].append((float(word.get("polarity", 0)),
                             float(word.get("subjectivity", 0)),
                             float(word.get("intensity", 1))))
    negators = set(NEGATORS)
    out = sys.stdout
    out.write("# Default English sentiment lexicon for mediakg.\n")
    out.write("# Derived from the pattern subjectivity lexicon "
              "(De Smedt & Daelemans, PDDL); senses averaged per word form.\n")
    out.write("# word<TAB>polarity<TAB>subjectivity<TAB>intensity; "
              "!word declares a negator.\n")
    for form in sorted(senses):
        if form in negators:
            continue
        values = senses[form]
        n = len(values)
        pol = round(sum(v[0] for v in values) / n, 4)
        subj = round(sum(v[1] for v in values) / n, 4)
        inten = round(sum(v[2] for v in values) / n, 4)
        pol = min(1.0, max(-1.0, pol))
        subj = min(1.0, max(0.0, subj))
        if inten <= 0:
            inten = 1.0
        out.write(f"{form}\t{pol:g}\t{subj:g}\t{inten:g}\n")
    for neg in NEGATORS:
        out.write(f"!{neg}\n")


if __name__ == "__main__":
    main(sys.argv[1])
