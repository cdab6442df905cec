#!/usr/bin/env python3
"""Generate the bundled strongly-regular-graph scheme fixtures.

Produces two-class schemes (identity / edge / non-edge) from:
  * the Shrikhande graph, SRG(16,6,2,2), as a Cayley graph on Z4 x Z4;
  * an SRG(26,10,3,4) found by Seidel switching inside the switching
    class of Paley(25) plus an isolated vertex (a regular two-graph);
  * the Latin square graph L3(5), an SRG(25,12,5,6), built from the
    non-cyclic main class of order-5 Latin squares; its per-edge
    4-clique distribution differs from Paley(25), so it is not the
    Paley graph.

Output files use the plain scheme format: "d s" header, then d rows of
d colors with 0 on the diagonal.
"""

import itertools
import random
import sys
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "data" / "nonschurian"


def scheme_from_graph(adj):
    d = adj.shape[0]
    m = np.full((d, d), 2, dtype=int)
    m[adj == 1] = 1
    np.fill_diagonal(m, 0)
    return m


def write_scheme(path, colors, header_comment):
    d = colors.shape[0]
    s = int(colors.max()) + 1
    lines = [f"# {header_comment}", f"{d} {s}"]
    for row in colors:
        lines.append(" ".join(str(int(c)) for c in row))
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path}")


def check_srg(adj, n, k, lam, mu):
    assert adj.shape == (n, n)
    assert (adj == adj.T).all() and (np.diag(adj) == 0).all()
    assert (adj.sum(axis=1) == k).all()
    a2 = adj @ adj
    j = np.ones((n, n), dtype=int)
    expect = k * np.eye(n, dtype=int) + lam * adj + mu * (j - np.eye(n, dtype=int) - adj)
    assert (a2 == expect).all(), "not an SRG with the stated parameters"


def shrikhande():
    pts = [(a, b) for a in range(4) for b in range(4)]
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    adj = np.zeros((16, 16), dtype=int)
    for i, (a, b) in enumerate(pts):
        for j, (c, e) in enumerate(pts):
            if ((a - c) % 4, (b - e) % 4) in conn:
                adj[i, j] = 1
    check_srg(adj, 16, 6, 2, 2)
    return adj


def paley25():
    # GF(25) = GF(5)[x]/(x^2 + x + 1), elements (a, b) = a + b x.
    els = [(a, b) for a in range(5) for b in range(5)]
    idx = {e: i for i, e in enumerate(els)}

    def mul(p, q):
        a, b = p
        c, d = q
        # (a + bx)(c + dx) = ac + (ad + bc)x + bd x^2, x^2 = -x - 1
        return ((a * c - b * d) % 5, (a * d + b * c - b * d) % 5)

    squares = {mul(e, e) for e in els if e != (0, 0)}
    adj = np.zeros((25, 25), dtype=int)
    for p in els:
        for q in els:
            if p != q:
                diff = ((p[0] - q[0]) % 5, (p[1] - q[1]) % 5)
                if diff in squares:
                    adj[idx[p], idx[q]] = 1
    check_srg(adj, 25, 12, 5, 6)
    return adj


def four_clique_count(adj):
    n = adj.shape[0]
    cnt = 0
    for quad in itertools.combinations(range(n), 4):
        ok = all(adj[a, b] for a, b in itertools.combinations(quad, 2))
        cnt += ok
    return cnt


def seidel_switch(adj, sset):
    out = adj.copy()
    comp = [v for v in range(adj.shape[0]) if v not in sset]
    for u in sset:
        for v in comp:
            out[u, v] ^= 1
            out[v, u] ^= 1
    return out


def find_regular_switch(adj, target_deg, rng):
    """Hill-climb for a Seidel switching set making the graph regular."""
    n = adj.shape[0]
    for _ in range(400):
        sset = set(v for v in range(n) if rng.random() < 0.5)
        for _ in range(4000):
            cur = seidel_switch(adj, sset)
            degs = cur.sum(axis=1)
            cost = int(np.abs(degs - target_deg).sum())
            if cost == 0:
                return sset
            best = None
            order = list(range(n))
            rng.shuffle(order)
            for v in order:
                trial = set(sset)
                trial.symmetric_difference_update({v})
                deg_t = seidel_switch(adj, trial).sum(axis=1)
                c = int(np.abs(deg_t - target_deg).sum())
                if c < cost:
                    best = trial
                    break
            if best is None:
                break
            sset = best
    return None


def per_edge_k4(adj):
    n = adj.shape[0]
    dist = {}
    for a, b in itertools.combinations(range(n), 2):
        if not adj[a, b]:
            continue
        common = [c for c in range(n) if adj[a, c] and adj[b, c]]
        cnt = sum(1 for c, d in itertools.combinations(common, 2) if adj[c, d])
        dist[cnt] = dist.get(cnt, 0) + 1
    return tuple(sorted(dist.items()))


def latin_square_graph(sq):
    n = len(sq)
    adj = np.zeros((n * n, n * n), dtype=int)
    cells = [(r, c) for r in range(n) for c in range(n)]
    for (r1, c1), (r2, c2) in itertools.combinations(cells, 2):
        if r1 == r2 or c1 == c2 or sq[r1][c1] == sq[r2][c2]:
            i, j = r1 * n + c1, r2 * n + c2
            adj[i, j] = adj[j, i] = 1
    return adj


# Representative of the non-cyclic main class of order-5 Latin squares.
NONCYCLIC_LS5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(7)

    shr = shrikhande()
    write_scheme(OUT / "shrikhande16.scm", scheme_from_graph(shr),
                 "Shrikhande graph scheme, SRG(16,6,2,2)")

    pal = paley25()
    base_k4 = four_clique_count(pal)
    print(f"Paley(25) 4-clique count: {base_k4}")

    # Paley(25) + isolated vertex lies in the switching class of a
    # regular two-graph on 26 points.
    g26 = np.zeros((26, 26), dtype=int)
    g26[:25, :25] = pal
    sset = find_regular_switch(g26, 10, rng)
    if sset is None:
        sys.exit("no regular Seidel switch found")
    srg26 = seidel_switch(g26, sset)
    check_srg(srg26, 26, 10, 3, 4)
    write_scheme(OUT / "paulus26.scm", scheme_from_graph(srg26),
                 f"SRG(26,10,3,4), Seidel switch of Paley(25)+K1 at S={sorted(sset)}")

    lsg = latin_square_graph(NONCYCLIC_LS5)
    check_srg(lsg, 25, 12, 5, 6)
    assert per_edge_k4(lsg) != per_edge_k4(pal), "L3(5) graph matched Paley invariant"
    write_scheme(OUT / "latin25.scm", scheme_from_graph(lsg),
                 "SRG(25,12,5,6), Latin square graph L3(5) of the non-cyclic "
                 f"main class, 4-clique count {four_clique_count(lsg)} "
                 f"(Paley has {base_k4})")


if __name__ == "__main__":
    main()
