#!/usr/bin/env python3
"""Independent reference computation for the prefiltered symbols group of
C5 x S3 in dimension 2.

The prefilter keeps only pairs (H, Y) = (C5, S3), so every generator is a
symbol (C5, S3, beta) with beta a sorted multiset of 1 or 2 nonzero
characters of C5 (integers 1..4). C5 is central, so conjugation is trivial
and canonical forms are plain sorted tuples. Relations are generated from
scratch here, with dense matrices and a textbook Smith normal form over
Python integers; nothing is shared with the Rust implementation.

Prints a JSON report:
  structure of the quotient, and verdicts for the chi = 1 class
  (C5,S3,(1)) + (C5,S3,(4)): is it zero, and is it equal to the chi = 2
  class (C5,S3,(2)) + (C5,S3,(3)).
"""

import json
from fractions import Fraction


def generators():
    gens = [(b,) for b in range(1, 5)]
    gens += [(b1, b2) for b1 in range(1, 5) for b2 in range(b1, 5)]
    return gens


def relation_rows(gens):
    index = {g: i for i, g in enumerate(gens)}
    rows = []
    for g in gens:
        if len(g) != 2:
            continue
        b1, b2 = g
        # (B1): the symbol dies when b1 + b2 = 0 in Z/5
        if (b1 + b2) % 5 == 0:
            row = [0] * len(gens)
            row[index[g]] = 1
            rows.append(row)
        # (B2): sym = Theta1 + Theta2, applied to every pair
        row = [0] * len(gens)
        row[index[g]] = 1
        if b1 != b2:
            t1a = tuple(sorted((b1, (b2 - b1) % 5)))
            t1b = tuple(sorted((b2, (b1 - b2) % 5)))
            row[index[t1a]] -= 1
            row[index[t1b]] -= 1
            # Theta2: delta = b1 - b2 is nonzero, its kernel in C5 is
            # trivial, so the kernel pair (triv, Y) is outside the
            # prefilter and projects to zero. (Equivalently the cyclic
            # exclusion b_i in <delta> always fires: <delta> = all of the
            # dual of C5.)
        else:
            # delta = 0: kernel is C5 itself; the length-drop term stays
            # inside the prefilter
            row[index[(b1,)]] -= 1
        if any(row):
            rows.append(row)
    return rows


def smith_invariants(mat):
    a = [row[:] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
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


def hnf(mat):
    """Row-style Hermite normal form over the integers."""
    a = [row[:] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for j in range(cols):
        if r == rows:
            break
        while True:
            piv = None
            for i in range(r, rows):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv][j])):
                    piv = i
            if piv is None:
                break
            a[r], a[piv] = a[piv], a[r]
            clean = True
            for i in range(r + 1, rows):
                if a[i][j] != 0:
                    q = round(Fraction(a[i][j], a[r][j]))
                    for jj in range(cols):
                        a[i][jj] -= q * a[r][jj]
                    if a[i][j] != 0:
                        clean = False
            if clean:
                break
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
        r += 1
    return [row for row in a[:r] if any(row)]


def in_lattice(h, v):
    w = v[:]
    for row in h:
        j = next(i for i, x in enumerate(row) if x != 0)
        if w[j] % row[j] != 0:
            return False
        q = w[j] // row[j]
        if q:
            for i in range(len(w)):
                w[i] -= q * row[i]
    return all(x == 0 for x in w)


def main():
    gens = generators()
    rows = relation_rows(gens)
    inv = smith_invariants(rows)
    torsion = [d for d in inv if d > 1]
    free_rank = len(gens) - len(inv)
    h = hnf(rows)
    index = {g: i for i, g in enumerate(gens)}

    def cls(*symbols):
        v = [0] * len(gens)
        for s in symbols:
            v[index[s]] += 1
        return v

    chi1 = cls((1,), (4,))
    chi2 = cls((2,), (3,))
    diff = [x - y for x, y in zip(chi1, chi2)]
    report = {
        "generators": len(gens),
        "relations": len(rows),
        "structure": {"free_rank": free_rank, "torsion": torsion},
        "chi1_is_zero": in_lattice(h, chi1),
        "chi2_is_zero": in_lattice(h, chi2),
        "chi1_eq_chi2": in_lattice(h, diff),
    }
    print(json.dumps(report, sort_keys=True))


if __name__ == "__main__":
    main()
