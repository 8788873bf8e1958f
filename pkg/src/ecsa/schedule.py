"""Cosine annealing with warm restarts for the discovery rate and step size.

Within a cycle of length ``t_i`` the emitted value decays along a half
cosine from ``eta_max`` (cycle start) to ``eta_min``; when the position
counter reaches the cycle length the schedule restarts at ``eta_max``
and the next cycle is ``ceil(t_i * t_mult)`` iterations long.  A cycle
therefore emits values at positions ``0 .. t_i - 1``: the ``eta_min``
endpoint is approached but the restart fires before it is emitted, so
with ``t_i = 100`` the values at iterations 0, 100, 300 (with
``t_mult = 2``) are all exactly ``eta_max``.

The standard algorithm is expressed with degenerate constant schedules
(``eta_min == eta_max``), which makes the enhanced loop with constant
schedules bit-identical to the standard one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ScheduleState:
    """Cosine-cycle bookkeeping: value range, cycle length and position."""

    eta_min: float
    eta_max: float
    t_i: int
    t_cur: int = 0
    t_mult: float = 1.0

    def __post_init__(self):
        if self.eta_min > self.eta_max:
            raise ValueError(
                f"eta_min={self.eta_min} must be <= eta_max={self.eta_max}"
            )
        if self.t_i < 1:
            raise ValueError(f"cycle length t_i must be >= 1, got {self.t_i}")
        if not 0 <= self.t_cur <= self.t_i:
            raise ValueError(f"t_cur={self.t_cur} outside [0, {self.t_i}]")
        if self.t_mult < 1.0:
            raise ValueError(f"t_mult must be >= 1, got {self.t_mult}")


def constant(value: float) -> ScheduleState:
    """Degenerate schedule that always emits ``value``."""
    return ScheduleState(eta_min=value, eta_max=value, t_i=1)


def cosine_value(state: ScheduleState) -> float:
    """Current annealed value: ``eta_min + (eta_max - eta_min)(1 + cos(pi t_cur / t_i)) / 2``."""
    span = state.eta_max - state.eta_min
    return state.eta_min + 0.5 * span * (1.0 + math.cos(math.pi * state.t_cur / state.t_i))


def advance(state: ScheduleState) -> ScheduleState:
    """Step the cycle position, restarting when the cycle is exhausted.

    The incremented position wrapping at ``t_i`` (rather than ``t_i + 1``)
    is what puts the post-restart value exactly at ``eta_max`` on the
    iteration the previous cycle's length runs out.
    """
    nxt = state.t_cur + 1
    if nxt >= state.t_i:
        return replace(
            state, t_cur=0, t_i=int(math.ceil(state.t_i * state.t_mult))
        )
    return replace(state, t_cur=nxt)


def ecsa_params(pa_schedule: ScheduleState, alpha_schedule: ScheduleState) -> tuple[float, float]:
    """Current (discovery rate, step size) pair from two synchronized schedules."""
    return cosine_value(pa_schedule), cosine_value(alpha_schedule)
