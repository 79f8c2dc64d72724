"""Independent subclass and case counts for the family over a parameter grid.

Subclasses come from linear algebra on the bracket itself (rank of B, the
center, and [A,A,A]); cases come from the vanishing conditions of the
case hypotheses. Prints JSON with both tallies.
"""

import itertools
import json
import sys
from collections import Counter
from fractions import Fraction


def rank(rows):
    m = [list(map(Fraction, r)) for r in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def bracket(a, b):
    """Structure constants as a dict on increasing triples (1-based)."""
    return {(1, 2, 4): a, (1, 3, 4): b}


def sign_sort(t):
    t = list(t)
    s = 1
    for i in range(len(t)):
        for j in range(len(t) - 1 - i):
            if t[j] > t[j + 1]:
                t[j], t[j + 1] = t[j + 1], t[j]
                s = -s
    return s, tuple(t)


def ev(br, i, j, k):
    if len({i, j, k}) < 3:
        return [0, 0, 0, 0]
    s, t = sign_sort((i, j, k))
    v = br.get(t, [0, 0, 0, 0])
    return [s * x for x in v]


def subclass(a, b):
    br = bracket(a, b)
    if not any(a) and not any(b):
        return "Abelian"
    rk = rank([a, b])
    d = lambda p, q: a[p - 1] * b[q - 1] - a[q - 1] * b[p - 1]
    if rk == 2:
        if d(1, 4) != 0:
            return "S1"
        M = [d(2, 4), d(3, 4), d(1, 2), d(1, 3)]
        return "S2" if any(M) else "S3"
    # rank 1: center from [e_i, e_j, z] = 0, nilpotent iff Z = [A,A,A]
    eqs = []
    for i in range(1, 5):
        for j in range(i + 1, 5):
            for p in range(4):
                eqs.append([ev(br, i, j, k)[p] for k in range(1, 5)])
    zdim = 4 - rank(eqs)
    assert zdim == 1
    # a basis vector of the center: solve via brute force over small combos
    img = [x for x in (a, b) if any(x)]
    # Z subset of [A,A,A] (both 1-dimensional) iff the image vector lies in the kernel
    w = img[0]
    inside = all(sum(row[k] * w[k] for k in range(4)) == 0 for row in eqs)
    return "S5" if inside else "S4"


def case(a, b):
    s = subclass(a, b)
    z = lambda x: x == 0
    if s == "S1":
        if not z(a[3]):
            return "1a"
        if not z(a[2]):
            return "1c" if a[2] == b[3] else "1b"
        return "1d"
    if s == "S2":
        if not z(a[0]) or not z(a[3]):
            if not z(a[3]):
                return "2a"
            if not z(a[2]):
                return "2b"
            if not z(b[2]):
                return "2c"
            return "2d"
        if not z(a[2]):
            return "2i" if z(b[3]) else "2e"
        if not z(b[3]):
            return "2f"
        if not z(b[2]):
            return "2g"
        return "2h"
    if s == "S3":
        if not z(a[2]):
            return "3a"
        return "3c" if b[2] == a[1] else "3b"
    if s == "S4":
        if any(a):
            if not z(a[3]):
                return "4a"
            if not z(a[2]):
                return "4c" if z(a[0]) else "4b"
            if not z(a[0]):
                return "4d"
            return "4e"
        if not z(b[3]):
            return "4f"
        if not z(b[2]):
            return "4g"
        return "4h"
    if s == "S5":
        return "5a" if z(a[2]) else "5b"
    return "abelian"


def main():
    grid = [int(x) for x in (sys.argv[1] if len(sys.argv) > 1 else "-1,0,1").split(",")]
    subs, cases = Counter(), Counter()
    for vals in itertools.product(grid, repeat=8):
        a, b = list(vals[:4]), list(vals[4:])
        subs[subclass(a, b)] += 1
        cases[case(a, b)] += 1
    print(json.dumps({"subclass": dict(sorted(subs.items())), "case": dict(sorted(cases.items()))}, indent=1))


if __name__ == "__main__":
    main()
