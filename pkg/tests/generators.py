"""Deterministic triangulation families shared by the property and acceptance suites."""

import random

from surfqp import MarkedSurface, add_puncture, nice_triangulation, once_punctured_genus, sphere_base

BASES = [
    ("sphere4", lambda: sphere_base(4)),
    ("sphere5", lambda: sphere_base(5)),
    ("sphere6", lambda: sphere_base(6)),
    ("genus1", lambda: once_punctured_genus(1)),
    ("genus2", lambda: once_punctured_genus(2)),
    ("genus3", lambda: once_punctured_genus(3)),
]

MAX_ARCS = 18


def random_chain(seed: int, max_arcs: int = MAX_ARCS):
    """A base surface followed by a seeded number of add_puncture steps on random arcs."""
    rng = random.Random(seed)
    name, make = BASES[seed % len(BASES)]
    t = make()
    room = (max_arcs - t.n_arcs) // 3
    steps = rng.randint(0, room)
    for _ in range(steps):
        t = add_puncture(t, rng.choice(sorted(t.arc_ids)))
    return f"{name}+{steps}(seed {seed})", t


def chain_family(count: int = 25, max_arcs: int = MAX_ARCS):
    return [random_chain(s, max_arcs) for s in range(count)]


def existence_family():
    out = []
    for g in range(4):
        for p in range(1, 9):
            if MarkedSurface(g, p).triangulable:
                out.append(((g, p), nice_triangulation(MarkedSurface(g, p))))
    return out
