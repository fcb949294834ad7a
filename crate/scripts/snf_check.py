#!/usr/bin/env python3
"""Reference Smith normal form over Python integers.

Reads a JSON object {"rows": R, "cols": C, "entries": [[i, j, v], ...]}
from stdin and prints the invariant factors (including 1s) as a JSON list.
Used to cross-check the invariant factors of relation matrices computed by
the Rust implementation; shares no code or strategy with it.
"""

import json
import sys


def smith_invariants(rows, cols, entries):
    a = [[0] * cols for _ in range(rows)]
    for i, j, v in entries:
        a[i][j] = v
    n = min(rows, cols)
    inv = []
    t = 0
    while t < n:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if not pivot:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            again = False
            for i in range(t + 1, rows):
                while a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t] != 0:
                        a[i], a[t] = a[t], a[i]
            for j in range(t + 1, cols):
                while a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j] != 0:
                        for r in a:
                            r[j], r[t] = r[t], r[j]
                        again = True
            if any(a[i][t] != 0 for i in range(t + 1, rows)):
                again = True
            if not again:
                fixed = True
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % a[t][t] != 0:
                            for jj in range(cols):
                                a[t][jj] += a[i][jj]
                            fixed = False
                            break
                    if not fixed:
                        break
                if fixed:
                    break
        inv.append(abs(a[t][t]))
        t += 1
    return inv


def main():
    data = json.load(sys.stdin)
    inv = smith_invariants(data["rows"], data["cols"], data["entries"])
    print(json.dumps(inv))


if __name__ == "__main__":
    main()
