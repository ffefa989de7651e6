"""Proximity clustering and selection of the group engaged with the robot."""

from __future__ import annotations

from shutter_sim import PersonObservation, cluster_groups, interaction_group_size


def p(pid, x, y):
    return PersonObservation(pid, x, y)


def members(clusters):
    return [set(c.members) for c in clusters]


def test_threshold_is_inclusive():
    assert members(cluster_groups([p(1, 0.0, 0.0), p(2, 1.5, 0.0)])) == [{1, 2}]
    assert members(cluster_groups([p(1, 0.0, 0.0), p(2, 1.5001, 0.0)])) == [{1}, {2}]


def test_chained_neighbours_form_one_cluster():
    # 1-2 and 2-3 are in range while 1-3 is not: connectivity is transitive
    people = [p(1, 0.0, 0.0), p(2, 1.4, 0.0), p(3, 2.8, 0.0)]
    assert members(cluster_groups(people)) == [{1, 2, 3}]


def test_clusters_are_ordered_by_smallest_member_id():
    people = [p(9, 5.0, 5.0), p(4, 0.0, 0.0), p(7, -5.0, 5.0)]
    assert members(cluster_groups(people)) == [{4}, {7}, {9}]


def test_no_persons_means_no_groups():
    assert cluster_groups([]) == []
    assert interaction_group_size([], []) == 0


def test_distant_clusters_do_not_qualify():
    people = [p(1, 10.0, 0.0), p(2, 10.5, 0.0)]
    clusters = cluster_groups(people)
    assert interaction_group_size(clusters, people) == 0
    assert not any(c.includes_robot for c in clusters)


def test_nearest_cluster_wins():
    people = [p(1, 2.3, 0.0), p(2, 0.5, 0.0), p(3, 0.7, 0.7)]
    clusters = cluster_groups(people)  # {1} is 2.3m away, {2,3} is 0.5m away
    assert members(clusters) == [{1}, {2, 3}]
    assert interaction_group_size(clusters, people) == 2
    assert [c.includes_robot for c in clusters] == [False, True]


def test_distance_tie_breaks_toward_smaller_id():
    people = [p(1, 2.0, 0.0), p(2, -2.0, 0.0)]
    clusters = cluster_groups(people)
    assert interaction_group_size(clusters, people) == 1
    assert [c.includes_robot for c in clusters] == [True, False]


def test_winner_flag_moves_when_positions_change():
    first = [p(1, 0.5, 0.0), p(2, 5.0, 5.0)]
    clusters = cluster_groups(first)
    interaction_group_size(clusters, first)
    assert [c.includes_robot for c in clusters] == [True, False]

    second = [p(1, 5.0, 5.0), p(2, 0.5, 0.0)]
    clusters = cluster_groups(second)
    interaction_group_size(clusters, second)
    assert [c.includes_robot for c in clusters] == [False, True]


def test_custom_threshold_and_radius():
    people = [p(1, 0.0, 0.0), p(2, 2.5, 0.0)]
    assert members(cluster_groups(people, dist_threshold=3.0)) == [{1, 2}]
    clusters = cluster_groups(people, dist_threshold=3.0)
    assert interaction_group_size(clusters, people, zone_radius=1.0) == 2
