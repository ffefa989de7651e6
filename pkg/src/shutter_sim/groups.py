"""Proximity-based grouping of tracked persons around the robot."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .world import PersonObservation

DEFAULT_DIST_THRESHOLD = 1.5
DEFAULT_ZONE_RADIUS = 2.5


@dataclass
class GroupCluster:
    """A connected component of persons under the pairwise distance threshold."""

    members: frozenset[int]
    includes_robot: bool = False


def cluster_groups(
    persons: Iterable[PersonObservation],
    dist_threshold: float = DEFAULT_DIST_THRESHOLD,
) -> list[GroupCluster]:
    """Partition persons into clusters; two persons connect when within the threshold.

    Returns clusters ordered by their smallest member id.
    """
    people = sorted(persons, key=lambda p: p.person_id)
    parent = {p.person_id: p.person_id for p in people}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]  # path halving
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            # attach the larger root id under the smaller for determinism
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for i, a in enumerate(people):
        for b in people[i + 1:]:
            if math.hypot(a.x - b.x, a.y - b.y) <= dist_threshold:
                union(a.person_id, b.person_id)

    by_root: dict[int, set[int]] = {}
    for p in people:
        by_root.setdefault(find(p.person_id), set()).add(p.person_id)
    return [
        GroupCluster(members=frozenset(members))
        for _, members in sorted(by_root.items(), key=lambda kv: min(kv[1]))
    ]


def interaction_group_size(
    clusters: list[GroupCluster],
    persons: Iterable[PersonObservation],
    zone_radius: float = DEFAULT_ZONE_RADIUS,
) -> int:
    """Size of the cluster engaged with the robot, or 0 when none qualifies.

    A cluster qualifies when any member stands within the zone radius of the
    origin.  Among qualifying clusters the one with the nearest member wins;
    ties break toward the smaller minimum member id.  The winning cluster gets
    ``includes_robot`` set; every other cluster gets it cleared.
    """
    distance = {p.person_id: math.hypot(p.x, p.y) for p in persons}
    best: GroupCluster | None = None
    best_key: tuple[float, int] | None = None
    for cluster in clusters:
        nearest = min((distance[m] for m in cluster.members), default=math.inf)
        if nearest > zone_radius:
            continue
        key = (nearest, min(cluster.members))
        if best_key is None or key < best_key:
            best, best_key = cluster, key
    for cluster in clusters:
        cluster.includes_robot = cluster is best
    return len(best.members) if best is not None else 0
