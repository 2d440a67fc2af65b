"""Hand-built graphs and cycle sets shared across test modules."""

import random

from hamcycles.cycles import cycle_from_walk
from hamcycles.graph import build_graph
from hamcycles.harness import named_graph


def fan(n):
    """Fan triangulation of the n-gon and its n - 2 triangles (apex 0)."""
    g = named_graph(f"fan({n})")
    return g, [cycle_from_walk([0, i, i + 1], g) for i in range(1, n - 1)]


def chorded_polygon(n, rng):
    """The n-gon cut by random non-crossing chords; returns the graph and its faces.

    Faces are split one at a time, so adjacent faces share exactly one chord.
    """
    faces = [list(range(n))]
    chords = []
    for _ in range(rng.randint(0, n - 3)):
        splittable = [f for f in faces if len(f) >= 4]
        if not splittable:
            break
        face = rng.choice(splittable)
        k = len(face)
        i = rng.randrange(k)
        j = (i + rng.randint(2, k - 2)) % k
        i, j = min(i, j), max(i, j)
        faces.remove(face)
        faces += [face[i : j + 1], face[j:] + face[: i + 1]]
        chords.append((face[i], face[j]))
    g = build_graph(n, [(i, (i + 1) % n) for i in range(n)] + chords)
    return g, [cycle_from_walk(f, g) for f in faces]


def random_chorded_polygons(count, seed=0, sizes=(4, 16)):
    rng = random.Random(seed)
    return [chorded_polygon(rng.randint(*sizes), rng) for _ in range(count)]


def lemma31_fixture():
    """Two triangles and a Hamilton 5-cycle; the unique solution is the 5-cycle.

    Triangle 0-1-4 then has every edge on two cycles and nothing in the set
    is removable.
    """
    g = build_graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (2, 3), (0, 4), (1, 4)])
    pool = [cycle_from_walk(w, g) for w in ([0, 1, 2], [0, 1, 4], [0, 3, 2, 1, 4])]
    return g, pool


def bowtie3():
    """Three triangles meeting only at vertex 0."""
    g = build_graph(7, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (0, 5), (5, 6), (0, 6)])
    return g, [cycle_from_walk(w, g) for w in ([0, 1, 2], [0, 3, 4], [0, 5, 6])]


def figure3():
    """Triangles m-a-b and m-c-d glued by m-b-c; m = 0, a..d = 1..4.

    Deleting the middle triangle leaves four R_1 edges at m.
    """
    g = build_graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (2, 3)])
    return g, [cycle_from_walk(w, g) for w in ([0, 1, 2], [0, 3, 4], [0, 2, 3])]
