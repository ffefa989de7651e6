"""Shared test helpers: repository paths and a catalogue of scriptable stub leaves."""

from __future__ import annotations

from pathlib import Path

from shutter_sim import Behavior, Catalogue, NodeStatus

PKG_ROOT = Path(__file__).resolve().parent.parent
SCENARIO_DIR = PKG_ROOT / "scenarios"
TREE_FILE = PKG_ROOT / "trees" / "photographer.tree"
MALFORMED_DIR = Path(__file__).resolve().parent / "data" / "malformed"


class LeafScript:
    """Stub behaviors and conditions whose outcomes tests set between ticks.

    Behavior ``stub_i`` logs its index on every tick and returns
    ``script.statuses[i]``; condition ``flag_k`` reads ``script.flags[k]``.
    """

    def __init__(self, n_leaves: int = 6, n_flags: int = 2):
        self.statuses = [NodeStatus.SUCCESS] * n_leaves
        self.log: list[int] = []
        self.calls: list[tuple[int, int]] = []
        self.flags = [True] * n_flags
        self.catalogue = Catalogue()

        def record(ctx, step, i):
            self.log.append(i)
            self.calls.append((i, step))

        for i in range(n_leaves):
            self.catalogue.register_behavior(Behavior(
                f"stub_{i}", 1,
                step_fn=(lambda ctx, step, i=i: record(ctx, step, i)),
                status_fn=(lambda ctx, step, i=i: self.statuses[i]),
            ))
        for k in range(n_flags):
            self.catalogue.register_condition(
                f"flag_{k}", lambda ctx, k=k: self.flags[k]
            )
        self.catalogue.register_condition("always", lambda ctx: True)
        self.catalogue.register_condition("never", lambda ctx: False)
