from __future__ import annotations

import pytest
from hypothesis import settings

from adq.formats import GenParams, gen_random, load_fixture
from adq.met import Met, MetNode, make_met

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def build_met(
    edges: dict[int, list[int]],
    weights: dict[int, float] | None = None,
    root: int = 0,
    wrong_root: bool = False,
    name: str = "test",
) -> Met:
    """Hand-built tree from an adjacency dict; missing nodes become leaves."""
    weights = weights or {}
    ids = {root} | set(edges) | set(weights)
    for kids in edges.values():
        ids.update(kids)
    nodes = [
        MetNode(
            id=i,
            label=f"n{i}",
            wi=weights.get(i, 1.0),
            children=tuple(edges.get(i, [])),
        )
        for i in sorted(ids)
    ]
    return make_met(nodes, root=root, root_marked_wrong=wrong_root, name=name)


def chain(length: int, wrong_root: bool = False, weights: dict[int, float] | None = None) -> Met:
    """0 -> 1 -> ... -> length-1."""
    return build_met(
        {i: [i + 1] for i in range(length - 1)},
        weights=weights,
        wrong_root=wrong_root,
        name=f"chain{length}",
    )


def random_uniform_met(seed: int, max_nodes: int = 40, allow_wrong_root: bool = True) -> Met:
    import random

    rng = random.Random(seed)
    n = rng.randint(1, max_nodes)
    wrong = allow_wrong_root and n >= 2 and rng.random() < 0.3
    return gen_random(GenParams(
        node_count=n,
        max_children=rng.randint(1, 4),
        seed=seed,
        root_marked_wrong=wrong,
    ))


def random_variable_met(seed: int, max_nodes: int = 40, zero_prob: float = 0.15) -> Met:
    import random

    rng = random.Random(seed ^ 0x5EED)
    n = rng.randint(1, max_nodes)
    wrong = n >= 2 and rng.random() < 0.3
    return gen_random(GenParams(
        node_count=n,
        max_children=rng.randint(1, 4),
        weight_range=(0.1, 10.0),
        zero_weight_prob=zero_prob,
        seed=seed,
        root_marked_wrong=wrong,
    ))


def ordering_corpus(count: int) -> list[Met]:
    """Seeded uniform corpus for strategy-ranking comparisons: narrow trees
    (arity at most 3) of 2 to 50 nodes, all Undefined."""
    import random

    corpus = []
    for seed in range(count):
        rng = random.Random(seed)
        corpus.append(gen_random(GenParams(
            node_count=rng.randint(2, 50),
            max_children=rng.randint(1, 3),
            seed=seed,
        )))
    return corpus


@pytest.fixture(scope="session")
def figure3():
    return load_fixture("figure3_chain")


@pytest.fixture(scope="session")
def figure4():
    return load_fixture("figure4")


@pytest.fixture(scope="session")
def figure6():
    return load_fixture("figure6")


@pytest.fixture(scope="session")
def figure7():
    return load_fixture("figure7")


@pytest.fixture(scope="session")
def insort():
    return load_fixture("insort")
