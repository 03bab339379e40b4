"""Ferroelectric polarization hysteresis with rate-limited field response.

The polarization of the ferroelectric layer follows a saturating branch
model: each ascending or descending branch is a scaled tanh centered on
the branch's coercive field, and minor loops are built from turning-point
history so that periodic drives retrace closed loops (return-point
memory).  The field seen by the layer lags the applied field through a
single first-order relaxation, integrated exactly per step.

Program and erase directions may carry different coercive fields.  Each
branch derives its transition width from its own coercive field, which
keeps the remanence identity P(0) = -/+ Pr exact on both branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

ASCENDING = +1
DESCENDING = -1

# Guard for degenerate branch fits (reversal at an already-visited field).
_DENOM_EPS = 1e-30


@dataclass(frozen=True)
class FerroParams:
    """Material and geometry parameters of the ferroelectric layer.

    Attributes
    ----------
    ps : float
        Saturation polarization, C/m^2.
    pr : float
        Remanent polarization, C/m^2.  Must satisfy 0 < pr < ps.
    ec : float
        Coercive field of the erase (descending) branch, V/m.
    ec_program : float or None
        Coercive field of the program (ascending) branch, V/m.  ``None``
        selects a symmetric loop (ec_program = ec).
    t_fe : float
        Layer thickness, m.
    tau_eff : float
        Relaxation time of the effective field, s.
    area : float
        Device area, m^2 (used for charge bookkeeping by the gate stack).
    """

    ps: float = 0.2
    pr: float = 0.19
    ec: float = 1.04e8
    ec_program: float | None = None
    t_fe: float = 10e-9
    tau_eff: float = 1.0e-6
    area: float = 2.5e-13

    def __post_init__(self):
        if not (0.0 < self.pr < self.ps):
            raise ValueError("require 0 < pr < ps")
        if self.ec <= 0.0 or self.t_fe <= 0.0 or self.tau_eff <= 0.0:
            raise ValueError("ec, t_fe, tau_eff must be positive")
        if self.ec_program is not None and self.ec_program <= 0.0:
            raise ValueError("ec_program must be positive when given")

    @property
    def coercive_voltage(self) -> float:
        return self.ec * self.t_fe


def delta_of(params: FerroParams, ec: float | None = None) -> float:
    """Transition width of a branch, V/m.

    Chosen so the branch passes through the remanent point exactly:
    tanh(ec / (2*delta)) == pr/ps.
    """
    if ec is None:
        ec = params.ec
    ratio = params.pr / params.ps
    return ec / math.log((1.0 + ratio) / (1.0 - ratio))


def _branch_ec(params: FerroParams, direction: int) -> float:
    if direction == ASCENDING and params.ec_program is not None:
        return params.ec_program
    return params.ec


def _branch_tanh(params: FerroParams, direction: int, e: float) -> float:
    """tanh shape factor of the major branch in `direction` at field `e`."""
    ec = _branch_ec(params, direction)
    delta = delta_of(params, ec)
    if direction == ASCENDING:
        return math.tanh((e - ec) / (2.0 * delta))
    return math.tanh((e + ec) / (2.0 * delta))


@dataclass
class BranchState:
    """Polarization state: current branch, lagged field, and loop history.

    ``history`` holds past turning points (field, polarization), innermost
    last.  The live branch starts at history[-1] and closes at history[-2];
    with fewer entries it closes into saturation, which reproduces the
    major loop.
    """

    direction: int = ASCENDING
    k: float = 1.0
    p_off: float = 0.0
    e_eff: float = 0.0
    p: float = 0.0
    history: list[tuple[float, float]] = field(default_factory=list)

    def copy(self) -> "BranchState":
        return BranchState(self.direction, self.k, self.p_off,
                           self.e_eff, self.p, list(self.history))


def negative_saturation(params: FerroParams) -> BranchState:
    """Rest state after deep negative saturation (ascending major branch)."""
    st = BranchState(direction=ASCENDING, k=1.0, p_off=0.0, e_eff=0.0)
    st.p = branch_polarization(params, st, 0.0)
    return st


def positive_saturation(params: FerroParams) -> BranchState:
    """Rest state after deep positive saturation (descending major branch)."""
    st = BranchState(direction=DESCENDING, k=1.0, p_off=0.0, e_eff=0.0)
    st.p = branch_polarization(params, st, 0.0)
    return st


def branch_polarization(params: FerroParams, state: BranchState, e: float) -> float:
    """Polarization on the state's current branch at field `e`, C/m^2."""
    return state.k * params.ps * _branch_tanh(params, state.direction, e) + state.p_off


def _rebuild_branch(params: FerroParams, state: BranchState) -> None:
    """Recompute (k, p_off) from the turning-point history.

    Continuity at the newest turning point; closure either at the turning
    point one level out, or into the saturation the branch is heading for
    when no outer turning point exists.
    """
    d = state.direction
    if not state.history:
        state.k = 1.0
        state.p_off = 0.0
        return
    e_top, p_top = state.history[-1]
    t_top = _branch_tanh(params, d, e_top)
    ps = params.ps
    if len(state.history) >= 2:
        e_anchor, p_anchor = state.history[-2]
        t_anchor = _branch_tanh(params, d, e_anchor)
        denom = ps * (t_top - t_anchor)
        if abs(denom) < _DENOM_EPS:
            state.k = 0.0
            state.p_off = p_top
            return
        state.k = (p_top - p_anchor) / denom
    else:
        if d == ASCENDING:
            denom = ps * (1.0 - t_top)
            state.k = (ps - p_top) / denom if abs(denom) >= _DENOM_EPS else 0.0
        else:
            denom = ps * (1.0 + t_top)
            state.k = (p_top + ps) / denom if abs(denom) >= _DENOM_EPS else 0.0
    state.p_off = p_top - state.k * ps * t_top


def reverse_branch(state: BranchState, params: FerroParams) -> BranchState:
    """Reverse sweep direction at the current (E_eff, P) point.

    Pushes the turning point and fits the new branch through it.  Mutates
    and returns `state`.
    """
    state.history.append((state.e_eff, state.p))
    state.direction = -state.direction
    _rebuild_branch(params, state)
    return state


def _move_to(params: FerroParams, state: BranchState, e_target: float) -> None:
    """Advance E_eff monotonically to `e_target`, handling reversal and
    wipe-out of exhausted turning points."""
    if e_target == state.e_eff:
        return
    step = ASCENDING if e_target > state.e_eff else DESCENDING
    if step != state.direction:
        reverse_branch(state, params)
    # Wipe out turning-point pairs the move passes beyond: the branch
    # rejoins the loop that was interrupted there.
    while len(state.history) >= 2:
        e_anchor = state.history[-2][0]
        passed = (e_target >= e_anchor if state.direction == ASCENDING
                  else e_target <= e_anchor)
        if not passed:
            break
        del state.history[-2:]
        _rebuild_branch(params, state)
    state.e_eff = e_target
    state.p = branch_polarization(params, state, e_target)


def advance_field(params: FerroParams, e_eff: float, e_ext: float, dt: float) -> float:
    """Exact one-step update of the lagged field under constant drive.

    dE_eff/dt = (E_ext - E_eff) / tau_eff  integrated over dt.
    """
    if dt < 0.0:
        raise ValueError("dt must be nonnegative")
    return e_ext + (e_eff - e_ext) * math.exp(-dt / params.tau_eff)


def apply_pulse(params: FerroParams, state: BranchState, v_fe: float,
                duration: float, nsteps: int = 1) -> BranchState:
    """Drive the layer with a constant voltage pulse across it.

    Under constant drive the lagged field moves monotonically, so a single
    step is exact; `nsteps` only refines where along the way the turning
    point is logged.  Mutates and returns `state`.
    """
    if duration < 0.0:
        raise ValueError("duration must be nonnegative")
    if nsteps < 1:
        raise ValueError("nsteps must be >= 1")
    e_ext = v_fe / params.t_fe
    dt = duration / nsteps
    for _ in range(nsteps):
        _move_to(params, state, advance_field(params, state.e_eff, e_ext, dt))
    return state


def settle(params: FerroParams, state: BranchState,
           duration: float | None = None) -> BranchState:
    """Let the lagged field relax at zero applied voltage.

    Default duration (50 tau) drives E_eff to zero within float precision.
    """
    if duration is None:
        duration = 50.0 * params.tau_eff
    return apply_pulse(params, state, 0.0, duration)


def trace_loop(params: FerroParams, v_amplitude: float, nsteps: int = 400):
    """Quasi-static bipolar triangular sweep -V_A -> +V_A -> -V_A.

    Starts from negative saturation preconditioned at -V_A.  Returns a list
    of (v_fe, p) pairs tracing the full loop.
    """
    if v_amplitude <= 0.0:
        raise ValueError("v_amplitude must be positive")
    e_amp = v_amplitude / params.t_fe
    state = negative_saturation(params)
    _move_to(params, state, -e_amp)
    points = [(-v_amplitude, state.p)]
    half = max(2, nsteps // 2)
    for i in range(1, half + 1):       # -A -> +A
        e = -e_amp + 2.0 * e_amp * i / half
        _move_to(params, state, e)
        points.append((e * params.t_fe, state.p))
    for i in range(1, half + 1):       # +A -> -A
        e = e_amp - 2.0 * e_amp * i / half
        _move_to(params, state, e)
        points.append((e * params.t_fe, state.p))
    return points


def major_loop_envelope(params: FerroParams, e: float) -> tuple[float, float]:
    """(lower, upper) polarization bounds of the full major loop at field `e`."""
    lo = params.ps * _branch_tanh(params, ASCENDING, e)
    hi = params.ps * _branch_tanh(params, DESCENDING, e)
    return lo, hi


def make_state(params: FerroParams, stored_one: bool) -> BranchState:
    """Saturated rest state for a stored logic value ('1' => +Pr side)."""
    return positive_saturation(params) if stored_one else negative_saturation(params)
