"""Slow, obviously-correct reference computations used by the tests.

None of these call the library's search code; they work straight from
vertex/edge/triangle lists.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, product


def count_automorphisms(n, edges, triangles=(), respect_triangles=True):
    """Plain backtracking over vertex images, pruned only by adjacency."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    emult = Counter(tuple(sorted(e)) for e in edges)
    tris = Counter(frozenset(t) for t in triangles)
    img = [None] * n
    used = [False] * n
    total = 0

    def extend(i):
        nonlocal total
        if i == n:
            if all(emult[tuple(sorted((img[u], img[v])))] == k for (u, v), k in emult.items()):
                if not respect_triangles or all(
                        tris[frozenset(img[x] for x in t)] == k for t, k in tris.items()):
                    total += 1
            return
        for w in range(n):
            if used[w] or len(adj[w]) != len(adj[i]):
                continue
            if all((img[j] in adj[w]) == (j in adj[i]) for j in range(i)):
                img[i], used[w] = w, True
                extend(i + 1)
                used[w] = False
        img[i] = None

    extend(0)
    return total


def psl2_order(m):
    """|SL2(Z/m)| / |{±1}| by listing every 2x2 matrix mod m."""
    sl = [q for q in product(range(m), repeat=4) if (q[0] * q[3] - q[1] * q[2]) % m == 1 % m]
    classes = {min(q, tuple((-x) % m for x in q)) for q in sl}
    return len(classes)


def mediant_ball_counts(depth):
    """Vertices of the Farey disc grown by mediants of boundary edges."""
    verts = {(1, 0), (0, 1), (1, 1), (-1, 1)}
    boundary = [((1, 0), (1, 1)), ((1, 1), (0, 1)), ((0, 1), (-1, 1)), ((-1, 1), (1, 0))]
    for _ in range(depth):
        nxt = []
        for a, b in boundary:
            # sign-consistent representatives so the mediant is a plain sum
            if a == (1, 0) and b[0] < 0:
                a = (-1, 0)
            if b == (1, 0) and a[0] < 0:
                b = (-1, 0)
            c = (a[0] + b[0], a[1] + b[1])
            if c[1] < 0 or (c[1] == 0 and c[0] < 0):
                c = (-c[0], -c[1])
            verts.add(c)
            nxt += [(a, c), (c, b)]
        boundary = nxt
    return len(verts)


def max_independent_brute(nbrs):
    """Largest independent set among vertex list ``nbrs`` (dict v -> set)."""
    items = list(nbrs)
    for k in range(len(items), 0, -1):
        for sub in combinations(items, k):
            if all(b not in nbrs[a] for a, b in combinations(sub, 2)):
                return k
    return 0


def partial_tuple_count(sizes):
    """Number of partial assignments: each coordinate free or fixed to one value."""
    total = 1
    for n in sizes:
        total *= n + 1
    return total


def genus_by_euler(v, e, f):
    return (2 - (v - e + f)) // 2
