#!/usr/bin/env python3
"""Deterministic synthetic corpus for the citation-comparison golden test.

Structure: 40 fixed pairs publish yearly from 2000 (repeat collaborations
from their second paper on), 60 solo authors publish in 2000 and then form
25 fresh pairings per year (first-time collaborations without first-time
authors). Repeat papers carry a 1.3x citation boost over a linear baseline.
"""

import json
import os


def noise(state):
    state = (state * 6364136223846793005 + 1442695040888963407) % 2**64
    return state, (state >> 40) / 2**24


def main():
    out = []
    state = 12345
    # fixed pairs: repeat collaborations
    for year in range(2000, 2020):
        for pair in range(40):
            a, b = f"R{2*pair}", f"R{2*pair+1}"
            state, u = noise(state)
            base = 2.0 * (2020 - year) + 0.5 * (pair % 7) + 10.0 * u + 1.0
            boost = 1.3 if year > 2000 else 1.0
            out.append({
                "id": f"rep-{year}-{pair}",
                "time": f"{year}-03",
                "authors": [a, b],
                "citations": round(base * boost, 3),
                "fields": ["teamsci"],
            })
    # solo history for the S pool
    for s in range(60):
        out.append({
            "id": f"solo-{s}",
            "time": "2000-01",
            "authors": [f"S{s}"],
            "citations": 1.0,
            "fields": ["teamsci"],
        })
    # fresh pairings: first-time collaborations, no first-time authors
    fresh = [(i, j) for i in range(60) for j in range(i + 1, 60)]
    cursor = 0
    for year in range(2001, 2020):
        for k in range(25):
            i, j = fresh[cursor]
            cursor += 1
            state, u = noise(state)
            base = 2.0 * (2020 - year) + 0.5 * (k % 7) + 10.0 * u + 1.0
            out.append({
                "id": f"new-{year}-{k}",
                "time": f"{year}-06",
                "authors": [f"S{i}", f"S{j}"],
                "citations": round(base, 3),
                "fields": ["teamsci"],
            })
    path = os.path.join(os.path.dirname(__file__), "cite.jsonl")
    with open(path, "w") as f:
        for rec in out:
            f.write(json.dumps(rec) + "\n")
    print(f"wrote {len(out)} records to {path}")


if __name__ == "__main__":
    main()
