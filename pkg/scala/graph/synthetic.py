from __future__ import annotations

import numpy as np
from loguru import logger

from ..constants.graph import SYNTHETIC_STREAM
from ..errors import ConfigError
from ..models import AttributedGraph
from ..utils import lane_rng

__all__ = ("planted_graph",)


def planted_graph(
    n: int,
    communities: int,
    f: int,
    avg_degree: float,
    noise: float,
    seed: int,
    *,
    mixing: float = 0.0,
) -> tuple[AttributedGraph, np.ndarray]:
    """Generate a homophilous attributed graph with planted communities.

    Every community gets a Gaussian prototype vector; a node's attributes are its
    community's prototype plus isotropic Gaussian noise. Edges connect a uniformly drawn
    node to a uniformly drawn member of the same community, except for a ``mixing``
    fraction whose second endpoint is drawn from the whole graph.

    Args:
        n: Node count.
        communities: Number of communities, at most ``n``.
        f: Attribute dimension.
        avg_degree: Target mean degree before deduplication.
        noise: Standard deviation of the attribute noise.
        seed: Seed of the generator stream.
        mixing: Fraction of edges that ignore community membership.

    Returns:
        tuple[AttributedGraph, np.ndarray]: The graph and each node's community id.
    """
    if n < 2 or not 1 <= communities <= n:
        msg = f"need n >= 2 and 1 <= communities <= n, got n={n}, communities={communities}"
        raise ConfigError(msg)
    if f < 1 or avg_degree <= 0 or noise < 0 or not 0.0 <= mixing <= 1.0:
        msg = "f must be positive, avg_degree positive, noise non-negative and mixing in [0, 1]"
        raise ConfigError(msg)

    rng = lane_rng(seed, SYNTHETIC_STREAM)
    community = rng.permutation(np.arange(n) % communities)
    prototypes = rng.normal(size=(communities, f))
    attributes = prototypes[community] + noise * rng.normal(size=(n, f))

    members = np.argsort(community, kind="stable")
    sizes = np.bincount(community, minlength=communities)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])

    m = round(n * avg_degree / 2)
    src = rng.integers(0, n, size=m)
    own = community[src]
    dst = members[starts[own] + (rng.random(m) * sizes[own]).astype(np.int64)]
    mixed = rng.random(m) < mixing
    dst[mixed] = rng.integers(0, n, size=int(mixed.sum()))

    graph = AttributedGraph.from_edges(src, dst, attributes)
    logger.debug(f"Planted graph: n={n}, m={graph.m}, communities={communities}, f={f}")
    return graph, community
