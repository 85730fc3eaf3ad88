#!/usr/bin/env python3
"""Independent entropy-LP oracle: every strict constraint generated in full,
solved in floating point with HiGHS and rounded to a small-denominator
fraction. Used to produce the frozen values in the C++ tests.

usage: entropy_lp_oracle.py <graph> (minmax|sum|set:v,v,...)
graphs: C<n>, K<n>, P<n>, or an edge-list file.
"""
import itertools
import sys
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix


def named_graph(name):
    kind, size = name[0], int(name[1:])
    if kind == "C":
        return size, [(i, (i + 1) % size) for i in range(size)]
    if kind == "K":
        return size, list(itertools.combinations(range(size), 2))
    if kind == "P":
        return size, [(i, i + 1) for i in range(size - 1)]
    raise ValueError(name)


def read_graph(arg):
    if arg[0] in "CKP" and arg[1:].isdigit():
        return named_graph(arg)
    lines = [l.split() for l in open(arg) if l.strip() and not l.startswith("#")]
    n = int(lines[0][0])
    return n, [(int(u), int(v)) for u, v in lines[1:]]


def solve(n, edges, objective):
    full = (1 << n) - 1
    edge_masks = [(1 << u) | (1 << v) for u, v in edges]

    def qualified(mask):
        return any(mask & e == e for e in edge_masks)

    minmax = objective == "minmax"
    nvar = full + (1 if minmax else 0)  # f(S) at index S-1, t last
    rows, cols, vals, rhs = [], [], [], []
    r = 0

    def add(terms, bound):  # sum coef * f(S) >= bound, f(0) dropped
        nonlocal r
        for mask, coef in terms:
            if mask:
                rows.append(r)
                cols.append(mask - 1)
                vals.append(coef)
        rhs.append(bound)
        r += 1

    for a in range(full + 1):
        for v in range(n):
            if not a >> v & 1:
                add([(a | 1 << v, 1), (a, -1)], 0)
        for v, w in itertools.combinations(range(n), 2):
            if not (a >> v & 1) and not (a >> w & 1):
                add([(a | 1 << v, 1), (a | 1 << w, 1), (a, -1), (a | 1 << v | 1 << w, -1)], 0)
    for b in range(1, full + 1):
        if not qualified(b):
            continue
        sub = b
        while True:
            sub = (sub - 1) & b
            if not qualified(sub):
                add([(b, 1), (sub, -1)], 1)
            if sub == 0:
                break
    # disjoint A, B nonempty and C: I(A;B|C) >= 1
    for labels in itertools.product(range(4), repeat=n):
        a = sum(1 << v for v in range(n) if labels[v] == 1)
        b = sum(1 << v for v in range(n) if labels[v] == 2)
        c = sum(1 << v for v in range(n) if labels[v] == 3)
        if not a or not b or qualified(c) or not qualified(a | c) or not qualified(b | c):
            continue
        add([(a | c, 1), (b | c, 1), (c, -1), (a | b | c, -1)], 1)

    cost = np.zeros(nvar)
    if minmax:
        for v in range(n):
            add([(1 << v, -1)], 0)
            rows.append(r - 1)
            cols.append(full)
            vals.append(1)
        cost[full] = 1
    elif objective == "sum":
        for v in range(n):
            cost[(1 << v) - 1] = 1
    else:
        mask = sum(1 << v for v in objective)
        cost[mask - 1] = 1
    a_ub = coo_matrix((-np.array(vals, dtype=float), (rows, cols)), shape=(r, nvar)).tocsr()
    res = linprog(cost, A_ub=a_ub, b_ub=-np.array(rhs, dtype=float), bounds=(0, None), method="highs")
    if res.status != 0:
        raise RuntimeError(res.message)
    return res.fun


def main():
    n, edges = read_graph(sys.argv[1])
    what = sys.argv[2]
    if what.startswith("set:"):
        objective = [int(x.lstrip("v")) for x in what[4:].split(",") if x]
        if not objective:
            print(0, 0.0)
            return
    else:
        objective = what
    value = solve(n, edges, objective)
    print(Fraction(value).limit_denominator(1000), value)


if __name__ == "__main__":
    main()
