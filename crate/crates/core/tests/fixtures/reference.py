#!/usr/bin/env python3
"""Standalone reference pipeline used to produce the golden fixtures.

Independent of the Rust crate: plain-Python splitmix64 tables, naive
per-start hill climbing, pairwise basin-boundary scan, and '%.17g'
formatting. Run: python3 reference.py <out_dir> [n k seed]
"""
import math
import os
import sys

M64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
GENE_MUL = 0x9E3779B97F4A7C15
CTX_MUL = 0xC2B2AE3D27D4EB4F


def splitmix64(x):
    z = (x + GAMMA) & M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return z ^ (z >> 31)


def entry(seed, gene, ctx):
    h = splitmix64(seed ^ ((gene * GENE_MUL + ctx * CTX_MUL) & M64))
    return (h >> 11) / float(1 << 53)


def fitness(n, k, seed, s):
    total = 0.0
    for i in range(n):
        ctx = 0
        for m in range(k + 1):
            ctx |= ((s >> ((i + m) % n)) & 1) << m
        total += entry(seed, i, ctx)
    return total / n


def climb(n, f, s):
    while True:
        best, best_f = None, None
        for i in range(n):
            t = s ^ (1 << i)
            if best_f is None or f[t] > best_f:
                best, best_f = t, f[t]
        if f[s] < best_f:
            s = best
        else:
            return s


def g17(x):
    return "%.17g" % x


def main():
    out = sys.argv[1]
    n, k, seed = (int(a) for a in sys.argv[2:5]) if len(sys.argv) > 4 else (6, 2, 3)
    size = 1 << n
    f = [fitness(n, k, seed, s) for s in range(size)]
    ends = [climb(n, f, s) for s in range(size)]
    optima = sorted(set(ends))
    ids = {o: i for i, o in enumerate(optima)}
    basin = [0] * len(optima)
    for e in ends:
        basin[ids[e]] += 1
    edges = set()
    for s in range(size):
        for i in range(n):
            t = s ^ (1 << i)
            a, b = ids[ends[s]], ids[ends[t]]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    deg = [0] * len(optima)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, "nodes.csv"), "w") as fh:
        fh.write("id,config,fitness,basin_size,degree\n")
        for i, o in enumerate(optima):
            fh.write(f"{i},{o},{g17(f[o])},{basin[i]},{deg[i]}\n")
    with open(os.path.join(out, "edges.csv"), "w") as fh:
        fh.write("src_id,dst_id\n")
        for a, b in sorted(edges):
            fh.write(f"{a},{b}\n")
    nv = len(optima)
    with open(os.path.join(out, "degree_cumulative.csv"), "w") as fh:
        fh.write("k,count,fraction\n")
        for kk in range(max(deg) + 1):
            c = sum(1 for d in deg if d >= kk)
            fh.write(f"{kk},{c},{g17(c / nv)}\n")
    with open(os.path.join(out, "basin_sizes.csv"), "w") as fh:
        fh.write("size,count,cumulative_count\n")
        for sz in sorted(set(basin)):
            fh.write(f"{sz},{basin.count(sz)},{sum(1 for b in basin if b >= sz)}\n")
    with open(os.path.join(out, "fitness_size.csv"), "w") as fh:
        fh.write("id,fitness,basin_size,degree\n")
        for i, o in enumerate(optima):
            fh.write(f"{i},{g17(f[o])},{basin[i]},{deg[i]}\n")
    # Scalar goldens used by the unit tests.
    print("entry(42,0,0) n4k1 =", repr(entry(42, 0, 0)))
    six = [entry(1, i, 0) for i in range(6)]
    print("n6k2s1 ctx0 entries =", [repr(v) for v in six])
    print("n6k2s1 f(0) =", repr(fitness(6, 2, 1, 0)))
    print("global optimum =", max(range(size), key=lambda s: f[s]), "optima", optima)


if __name__ == "__main__":
    main()
