#!/usr/bin/env python3
"""Independent fractional-cover oracle. One variable per explicit piece:
every star (center plus any nonempty subset of its edges) or every vertex
subset spanning a complete multipartite graph. Minimizes the maximum vertex
load with HiGHS and prints a small-denominator fraction.

usage: cover_oracle.py <graph> (star|multipartite)
"""
import itertools
import sys
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy.optimize import linprog

from entropy_lp_oracle import read_graph


def star_pieces(g):
    for c in g.nodes:
        nb = sorted(g.neighbors(c))
        for k in range(1, len(nb) + 1):
            for leaves in itertools.combinations(nb, k):
                yield {c, *leaves}, [(c, x) for x in leaves]


def multipartite_pieces(g):
    for k in range(2, g.number_of_nodes() + 1):
        for s in itertools.combinations(g.nodes, k):
            h = g.subgraph(s)
            comp = nx.complement(h)
            parts = list(nx.connected_components(comp))
            if len(parts) < 2:
                continue
            if any(comp.subgraph(p).number_of_edges() != len(p) * (len(p) - 1) // 2 for p in parts):
                continue
            yield set(s), list(h.edges)


def solve(n, edges, kind):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    pieces = list(star_pieces(g) if kind == "star" else multipartite_pieces(g))
    nvar = len(pieces) + 1
    edge_index = {frozenset(e): i for i, e in enumerate(g.edges)}
    a, b = [], []
    for e, i in edge_index.items():
        row = np.zeros(nvar)
        for j, (_, covered) in enumerate(pieces):
            if any(frozenset(x) == e for x in covered):
                row[j] = -1
        a.append(row)
        b.append(-1)
    for v in g.nodes:
        row = np.zeros(nvar)
        for j, (verts, _) in enumerate(pieces):
            if v in verts:
                row[j] = 1
        row[-1] = -1
        a.append(row)
        b.append(0)
    cost = np.zeros(nvar)
    cost[-1] = 1
    res = linprog(cost, A_ub=np.array(a), b_ub=np.array(b), bounds=(0, None), method="highs")
    if res.status != 0:
        raise RuntimeError(res.message)
    return res.fun


if __name__ == "__main__":
    n, edges = read_graph(sys.argv[1])
    value = solve(n, edges, sys.argv[2])
    print(Fraction(value).limit_denominator(1000), value)
