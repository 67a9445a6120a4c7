"""Synchronous cellular-automaton dynamics with the majority rule.

A :class:`Rule` maps ``(current state, neighbour states, k)`` to the next
state. :func:`step` applies it to every cell at once, always reading the
old field, and :func:`run` iterates until a fixed point, a limit cycle or
the action budget.
"""

from __future__ import annotations

import abc
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Collection, Sequence, Union

import numpy as np

from .exceptions import EmptyNeighborhoodError, ShapeMismatchError, StateOutOfRangeError
from .field import Field, digest, hamming
from .lattice import LatticeSpec, neighbor_table

DEFAULT_CYCLE_WINDOW = 64


class Rule(abc.ABC):
    """Local next-state function of a cellular automaton.

    Subclasses implement :meth:`next_state`. :meth:`apply` evaluates the
    rule for every cell from a neighbour table and may be overridden with
    a vectorised version, provided the result is identical.
    """

    name = "rule"

    @abc.abstractmethod
    def next_state(self, current: int, neighbor_states: Sequence[int], k: int) -> int:
        ...

    def apply(self, states: np.ndarray, table: np.ndarray, k: int) -> np.ndarray:
        out = np.empty_like(states)
        for i, row in enumerate(table):
            out[i] = self.next_state(int(states[i]), [int(states[j]) for j in row if j >= 0], k)
        return out

    def __repr__(self):
        return f"{type(self).__name__}()"


def majority_next_state(current: int, neighbor_states: Sequence[int], k: int) -> int:
    """Most frequent neighbour state; ties keep ``current`` if it is tied,
    otherwise the smallest tied state wins."""
    if not neighbor_states:
        raise EmptyNeighborhoodError("majority rule needs at least one neighbour")
    for s in (current, *neighbor_states):
        if not 0 <= s < k:
            raise StateOutOfRangeError(f"state {s} outside [0, {k})")
    counts = [0] * k
    for s in neighbor_states:
        counts[s] += 1
    top = max(counts)
    if counts[current] == top:
        return current
    return counts.index(top)


class MajorityRule(Rule):
    """Adopt the most frequent state among the neighbours (centre excluded)."""

    name = "majority"

    def next_state(self, current, neighbor_states, k):
        return majority_next_state(current, neighbor_states, k)

    def apply(self, states, table, k):
        valid = table >= 0
        if not valid.any(axis=1).all():
            raise EmptyNeighborhoodError("majority rule needs at least one neighbour")
        gathered = states[np.where(valid, table, 0)]
        counts = np.stack(
            [np.count_nonzero((gathered == v) & valid, axis=1) for v in range(k)], axis=1
        )
        top = counts.max(axis=1)
        idx = np.arange(states.size)
        # a state tied at the top that equals the centre wins; else the smallest such state
        keep = counts[idx, states] == top
        smallest = np.argmax(counts == top[:, None], axis=1)
        return np.where(keep, states, smallest).astype(states.dtype)

    def __eq__(self, other):
        return type(other) is MajorityRule

    def __hash__(self):
        return hash(MajorityRule)


def step(f: Field, lattice: LatticeSpec, rule: Rule | None = None) -> tuple[Field, int]:
    """One synchronous action. Returns the new field and the number of changed cells."""
    if f.lattice != lattice:
        raise ShapeMismatchError(
            f"field lives on {f.lattice.describe()}, step requested on {lattice.describe()}"
        )
    rule = rule or MajorityRule()
    nxt = Field(lattice, rule.apply(f.states, neighbor_table(lattice), f.k), f.k)
    return nxt, hamming(f, nxt)


# -- run loop ------------------------------------------------------------------


@dataclass(frozen=True)
class FixedPoint:
    at_action: int

    def describe(self) -> str:
        return f"FixedPoint(at_action={self.at_action})"


@dataclass(frozen=True)
class Cycle:
    period: int
    first_detected_at: int

    def describe(self) -> str:
        return f"Cycle(period={self.period}, first_detected_at={self.first_detected_at})"


@dataclass(frozen=True)
class BudgetExhausted:
    max_actions: int

    def describe(self) -> str:
        return f"BudgetExhausted(max_actions={self.max_actions})"


Termination = Union[FixedPoint, Cycle, BudgetExhausted]


@dataclass
class RunTrace:
    """Per-action change counts and how the run ended.

    ``deltas[i]`` and ``cumulative[i]`` belong to action ``i + 1``.
    """

    deltas: list[int] = dc_field(default_factory=list)
    termination: Termination | None = None
    final_field: Field | None = None

    @property
    def cumulative(self) -> list[int]:
        total, out = 0, []
        for d in self.deltas:
            total += d
            out.append(total)
        return out

    @property
    def actions(self) -> int:
        return len(self.deltas)


def run(
    f0: Field,
    lattice: LatticeSpec,
    rule: Rule | None = None,
    max_actions: int = 10,
    snapshot_schedule: Collection[int] = (),
    cycle_window: int = DEFAULT_CYCLE_WINDOW,
) -> tuple[RunTrace, dict[int, Field]]:
    """Iterate :func:`step` from ``f0``.

    Stops at the first action with no change (fixed point), when the field
    repeats one of the last ``cycle_window`` fields (cycle, confirmed by
    exact comparison), or after ``max_actions``. Snapshots are returned for
    the scheduled action indices that were reached; index 0 is ``f0``.
    """
    if max_actions < 1:
        raise ValueError(f"max_actions must be >= 1, got {max_actions}")
    if cycle_window < 1:
        raise ValueError(f"cycle_window must be >= 1, got {cycle_window}")
    rule = rule or MajorityRule()
    schedule = set(snapshot_schedule)
    snapshots: dict[int, Field] = {}
    if 0 in schedule:
        snapshots[0] = f0

    trace = RunTrace()
    recent: deque[tuple[int, str, Field]] = deque([(0, digest(f0), f0)], maxlen=cycle_window)
    current = f0
    for action in range(1, max_actions + 1):
        current, delta = step(current, lattice, rule)
        trace.deltas.append(delta)
        if action in schedule:
            snapshots[action] = current
        if delta == 0:
            trace.termination = FixedPoint(action)
            break
        key = digest(current)
        # newest first, so the first confirmed match gives the minimal period
        match = next(
            (a for a, d, past in reversed(recent) if d == key and past == current), None
        )
        if match is not None:
            trace.termination = Cycle(action - match, action)
            break
        recent.append((action, key, current))
    else:
        trace.termination = BudgetExhausted(max_actions)
    trace.final_field = current
    return trace, snapshots


def field_at(trace: RunTrace, action: int, lattice: LatticeSpec, rule: Rule | None = None) -> Field:
    """Field after ``action`` actions, extrapolated past early termination.

    Beyond a fixed point the field is constant; beyond a cycle it repeats
    with the detected period, so it is recovered by stepping from the final
    field ``(action - A) mod period`` times.
    """
    term = trace.termination
    if trace.final_field is None or term is None:
        raise ValueError("trace has no final field")
    if action > trace.actions and isinstance(term, BudgetExhausted):
        raise ValueError(f"action {action} beyond the exhausted budget of {trace.actions}")
    if action < trace.actions:
        raise ValueError(f"action {action} precedes the end of the run; capture it as a snapshot")
    f = trace.final_field
    if isinstance(term, Cycle):
        for _ in range((action - term.first_detected_at) % term.period):
            f, _ = step(f, lattice, rule)
    return f
