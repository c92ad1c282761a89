#!/usr/bin/env python3
"""Independent reference for the number-match rule.

Regenerates tests/data/number_match_cases.jsonl: for every case the expected
outcome is computed here, in Python, from the documented rule (first numeric
literal; currency symbols, thousands separators, and percent signs stripped;
parenthesized numbers negative; scale set with relative tolerance). The C++
implementation is checked against this table and must never be consulted to
produce it.

Usage: python3 scripts/make_nm_cases.py > tests/data/number_match_cases.jsonl
"""

import json
import sys

EPSILON = 1e-2
SCALE_SET = [0.01, 1.0, 100.0, 1e3, 1e6, 1e9, 1e-3, 1e-6, 1e-9]

SOFT = set(" \t$")


def extract_first_number(text):
    n = len(text)
    i = 0
    while i < n:
        if text[i].isdigit():
            break
        if text[i] == "." and i + 1 < n and text[i + 1].isdigit():
            break
        i += 1
    else:
        return None
    if i >= n:
        return None

    negative = False
    open_paren = False
    j = i
    while j > 0 and text[j - 1] in SOFT:
        j -= 1
    if j > 0 and text[j - 1] in "+-":
        negative = text[j - 1] == "-"
        j -= 1
        while j > 0 and text[j - 1] in SOFT:
            j -= 1
    if j > 0 and text[j - 1] == "(":
        open_paren = True

    literal = ""
    pos = i
    if text[pos] == ".":
        literal = "0"
    while pos < n and text[pos].isdigit():
        literal += text[pos]
        pos += 1
    while (
        pos < n
        and text[pos] == ","
        and pos + 3 < n
        and text[pos + 1].isdigit()
        and text[pos + 2].isdigit()
        and text[pos + 3].isdigit()
        and (pos + 4 >= n or not text[pos + 4].isdigit())
    ):
        literal += text[pos + 1 : pos + 4]
        pos += 4
    if pos < n and text[pos] == "." and pos + 1 < n and text[pos + 1].isdigit():
        literal += "."
        pos += 1
        while pos < n and text[pos].isdigit():
            literal += text[pos]
            pos += 1
    if pos < n and text[pos] in "eE":
        e = pos + 1
        exp = "e"
        if e < n and text[e] in "+-":
            exp += text[e]
            e += 1
        if e < n and text[e].isdigit():
            while e < n and text[e].isdigit():
                exp += text[e]
                e += 1
            literal += exp
            pos = e

    value = float(literal)

    if open_paren:
        j = pos
        while j < n and (text[j] in SOFT or text[j] == "%"):
            j += 1
        if j < n and text[j] == ")":
            negative = True
    return -value if negative else value


def number_match(answer_text, gold):
    if "UNANSWERABLE" in answer_text.upper():
        return 0
    pred = extract_first_number(answer_text)
    if pred is None:
        return 0
    tol = EPSILON * max(abs(gold), 1e-12)
    for s in SCALE_SET:
        if abs(s * pred - gold) <= tol:
            return 1
    return 0


CASES = [
    # The three pinned module examples.
    ("12.4", 12.5),
    ("41%", 0.41),
    ("UNANSWERABLE", 5.0),
    # Twenty derived cases.
    ("$1,234.56", 1234.56),
    ("(2,500)", -2500.0),
    ("-3.75", -3.75),
    ("The revenue was 4.2 million", 4200000.0),
    ("0.35", 35.0),
    ("3,141", 3.141),
    ("7,200,000", 7.2),
    ("9,800,000,000", 9.8),
    ("102", 100.0),
    ("99", 100.0),
    ("between 5 and 7", 5.0),
    ("between 5 and 7", 7.0),
    ("no figure available", 3.0),
    ("1.5e3", 1500.0),
    ("(12.5%)", -0.125),
    ("42.", 42.0),
    (".5", 0.5),
    ("$0", 0.0),
    ("1,2345", 12345.0),
    ("approximately -18.3%", -0.183),
]


def main():
    for answer, gold in CASES:
        rec = {"answer": answer, "gold": gold, "expected": number_match(answer, gold)}
        sys.stdout.write(json.dumps(rec) + "\n")


if __name__ == "__main__":
    main()
