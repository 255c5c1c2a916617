"""Shared builders for the test suite."""

import math
import random
from importlib import resources

from plumbhf import PlumbingGraph, definiteness, intersection_form

FIXTURES = ["sigma_2_3_13", "sigma_2_5_7", "sigma_3_4_5"]


def data_file(name: str) -> str:
    return str(resources.files("plumbhf").joinpath("data", name))


def build_graph(weights, edges):
    """Graph from a weight list (ids 0..n-1) and edge pairs."""
    return PlumbingGraph(
        vertices=tuple((i, w) for i, w in enumerate(weights)),
        edges=tuple(frozenset(e) for e in edges),
    )


def chain_graph(weights):
    return build_graph(weights, [(i, i + 1) for i in range(len(weights) - 1)])


def star_graph(center_weight, arms):
    """Star with the given center weight and arm weight lists."""
    weights = [center_weight]
    edges = []
    for arm in arms:
        prev = 0
        for w in arm:
            weights.append(w)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return build_graph(weights, edges)


# Negative definite but not almost-rational: two non-rational cores (each a
# star -1;[-7,-7,-7]) share no vertex, so no single weight decrease can fix
# both, while rationality of the whole would pass to either induced core.
NON_AR_WEIGHTS = [-1, -7, -7, -7, -1, -7, -7, -7]
NON_AR_EDGES = [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7), (3, 7)]


def non_ar_graph():
    return build_graph(NON_AR_WEIGHTS, NON_AR_EDGES)


def random_star(rng: random.Random, max_arm_len=2, weight_range=(-5, -1)):
    lo, hi = weight_range
    center = rng.randint(lo, hi)
    arms = []
    for _ in range(3):
        arms.append([rng.randint(lo, hi) for _ in range(rng.randint(1, max_arm_len))])
    return star_graph(center, arms)


def random_negdef_star(rng: random.Random, **kw):
    while True:
        g = random_star(rng, **kw)
        if definiteness(intersection_form(g)) == "negative_definite":
            return g


def coprime_triple(rng: random.Random, top=40):
    while True:
        a = sorted(rng.sample(range(2, top), 3))
        if math.gcd(a[0], a[1]) == math.gcd(a[0], a[2]) == math.gcd(a[1], a[2]) == 1:
            return tuple(a)
