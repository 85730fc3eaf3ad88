#!/usr/bin/env python3
"""Recomputes the frozen bound values with the independent oracles and
compares them with both the frozen table and the CLI output.

usage: check_frozen.py <girthforge binary>
"""
import os
import subprocess
import sys
import tempfile
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import cover_oracle  # noqa: E402
import entropy_lp_oracle  # noqa: E402

# (graph, CLI arguments, oracle, frozen value)
CASES = [
    ("C6", ["bound", "entropy", "--objective", "minmax"], ("entropy", "minmax"), "3/2"),
    ("C6", ["bound", "entropy", "--objective", "sum"], ("entropy", "sum"), "9"),
    ("C6", ["bound", "entropy", "--set", "v2,v3"], ("entropy", [2, 3]), "3"),
    ("C6", ["bound", "entropy", "--set", "v0"], ("entropy", [0]), "1"),
    ("C8", ["bound", "entropy", "--objective", "minmax"], ("entropy", "minmax"), "3/2"),
    ("K4", ["bound", "entropy", "--objective", "minmax"], ("entropy", "minmax"), "1"),
    ("C6", ["bound", "star-cover"], ("cover", "star"), "3/2"),
    ("C6", ["bound", "multipartite-cover"], ("cover", "multipartite"), "3/2"),
    ("P5", ["bound", "star-cover"], ("cover", "star"), "3/2"),
    ("K4", ["bound", "multipartite-cover"], ("cover", "multipartite"), "1"),
    ("C4", ["bound", "multipartite-cover"], ("cover", "multipartite"), "1"),
]


def write_graph(path, name):
    n, edges = entropy_lp_oracle.named_graph(name)
    with open(path, "w") as out:
        out.write(f"{n} {len(edges)}\n")
        for u, v in edges:
            out.write(f"{min(u, v)} {max(u, v)}\n")
    return n, edges


def main():
    binary = sys.argv[1]
    failed = 0
    with tempfile.TemporaryDirectory() as tmp:
        for name, args, (kind, what), frozen in CASES:
            path = os.path.join(tmp, name + ".edges")
            n, edges = write_graph(path, name)
            if kind == "entropy":
                value = entropy_lp_oracle.solve(n, edges, what)
            else:
                value = cover_oracle.solve(n, edges, what)
            oracle = Fraction(value).limit_denominator(1000)
            cli = subprocess.run([binary, *args, "--graph", path], capture_output=True, text=True, check=True)
            got = cli.stdout.split()[0]
            ok = str(oracle) == frozen == got
            failed += not ok
            print(f"{'ok  ' if ok else 'FAIL'} {name} {' '.join(args[1:])}: oracle {oracle} frozen {frozen} cli {got}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
