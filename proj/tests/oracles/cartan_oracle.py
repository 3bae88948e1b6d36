#!/usr/bin/env python3
"""Cartan matrices and root counts from explicit Euclidean realizations.

Simple roots are written in epsilon coordinates (Bourbaki numbering), the
Cartan entries are 2(a_i, a_j) / (a_j, a_j) and the root set is the closure of
the simple roots under the reflections they define. None of this touches the
simple-root-basis construction used by the library, so the output can serve
as a golden file for it.

Output format, one block per system:
    <label> <num_roots>
    <row 1>
    ...
"""

from fractions import Fraction as Fr


def e(n, *entries):
    v = [Fr(0)] * n
    for idx, val in entries:
        v[idx - 1] += Fr(val)
    return tuple(v)


def simple_roots(t, r):
    if t == "A":
        return [e(r + 1, (i, 1), (i + 1, -1)) for i in range(1, r + 1)]
    if t == "B":
        return [e(r, (i, 1), (i + 1, -1)) for i in range(1, r)] + [e(r, (r, 1))]
    if t == "C":
        return [e(r, (i, 1), (i + 1, -1)) for i in range(1, r)] + [e(r, (r, 2))]
    if t == "D":
        return [e(r, (i, 1), (i + 1, -1)) for i in range(1, r)] + [e(r, (r - 1, 1), (r, 1))]
    if t == "E":
        h = Fr(1, 2)
        e8 = [
            e(8, (1, h), (8, h), *[(k, -h) for k in range(2, 8)]),
            e(8, (1, 1), (2, 1)),
            e(8, (2, 1), (1, -1)),
            e(8, (3, 1), (2, -1)),
            e(8, (4, 1), (3, -1)),
            e(8, (5, 1), (4, -1)),
            e(8, (6, 1), (5, -1)),
            e(8, (7, 1), (6, -1)),
        ]
        return e8[:r]
    if t == "F":
        h = Fr(1, 2)
        return [e(4, (2, 1), (3, -1)), e(4, (3, 1), (4, -1)), e(4, (4, 1)), e(4, (1, h), (2, -h), (3, -h), (4, -h))]
    if t == "G":
        return [e(3, (1, 1), (2, -1)), e(3, (1, -2), (2, 1), (3, 1))]
    raise ValueError(t)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def reflect(v, a):
    c = 2 * dot(v, a) / dot(a, a)
    return tuple(x - c * y for x, y in zip(v, a))


def closure(simple):
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                w = reflect(v, a)
                if w not in roots:
                    roots.add(w)
                    nxt.append(w)
        frontier = nxt
    return roots


def systems():
    for r in range(1, 9):
        yield "A", r
    for r in range(2, 9):
        yield "B", r
    for r in range(3, 9):
        yield "C", r
    for r in range(4, 9):
        yield "D", r
    for r in (6, 7, 8):
        yield "E", r
    yield "F", 4
    yield "G", 2


def main():
    for t, r in systems():
        s = simple_roots(t, r)
        cart = [[2 * dot(a, b) / dot(b, b) for b in s] for a in s]
        print(f"{t}{r} {len(closure(s))}")
        for row in cart:
            assert all(x.denominator == 1 for x in row)
            print(" ".join(str(int(x)) for x in row))


if __name__ == "__main__":
    main()
