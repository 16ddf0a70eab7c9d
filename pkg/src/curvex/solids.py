"""Hand-built triangulations of a few named surfaces, used as reference data."""

from __future__ import annotations

from itertools import combinations

from .complex import Complex2


def _from_faces(name: str, n: int, faces) -> Complex2:
    edges = sorted({tuple(sorted(p)) for f in faces for p in combinations(f, 2)})
    return Complex2(tuple(f"{name}{i}" for i in range(n)), tuple(edges), tuple(faces), {"kind": name})


def tetrahedron() -> Complex2:
    faces = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]
    return _from_faces("tetra", 4, faces)


def octahedron() -> Complex2:
    # poles 0 and 5 around the square 1-2-3-4
    faces = []
    for i in range(4):
        a, b = 1 + i, 1 + (i + 1) % 4
        faces.append((0, a, b))
        faces.append((5, b, a))
    return _from_faces("octa", 6, faces)


def icosahedron() -> Complex2:
    # apex 0, upper pentagon 1..5, lower pentagon 6..10, apex 11;
    # lower vertex 6+i sits between upper 1+i and 1+(i+1)%5
    faces = []
    for i in range(5):
        u, u2 = 1 + i, 1 + (i + 1) % 5
        w, w_prev = 6 + i, 6 + (i - 1) % 5
        faces.append((0, u, u2))
        faces.append((u, w, u2))
        faces.append((u, w_prev, w))
        faces.append((11, 6 + (i + 1) % 5, w))
    return _from_faces("icosa", 12, faces)


def complete_bipartite(a: int, b: int) -> Complex2:
    labels = [f"L{i}" for i in range(a)] + [f"R{j}" for j in range(b)]
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Complex2(tuple(labels), tuple(edges), (), {"kind": f"K{a},{b}"})
