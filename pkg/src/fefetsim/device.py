"""Single 1T FeFET cell: threshold mapping, channel current, gate stack.

The stored polarization shifts the transistor threshold linearly across
the memory window.  The channel uses a smooth squared-softplus surrogate
whose deep-subthreshold slope is set by the swing parameter, plus a small
ohmic floor so fully-off devices stay numerically well conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import ferro
from .ferro import BranchState, FerroParams

EPS0 = 8.8541878128e-12  # vacuum permittivity, F/m

GATE_DIRECT = "direct"
GATE_DIVIDER = "divider"

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class FeFetParams:
    """Transistor surrogate parameters.

    Attributes
    ----------
    w, l : float
        Channel width / length, m.
    vt_mid : float
        Threshold voltage at zero stored polarization, V.
    mem_window : float
        Threshold shift between fully erased and fully programmed, V.
    swing : float
        Subthreshold swing, V/decade of drain current.
    n_slope : float
        Slope ideality factor of the surrogate; the squared softplus doubles
        the exponential rate, so n_slope = 2 makes the deep-subthreshold
        slope exactly 1/swing decades per volt.
    i_spec : float
        Specific current prefactor, A (scaled by w/l).
    g_min : float
        Ohmic floor conductance, S.
    gate_mode : str
        'direct': the full gate-to-body voltage drops across the
        ferroelectric.  'divider': charge balance against a series
        interlayer capacitance decides the split.
    c_il : float
        Interlayer capacitance per area for divider mode, F/m^2.
    eps_fe : float
        Relative permittivity of the ferroelectric (divider mode).
    """

    w: float = 500e-9
    l: float = 500e-9
    vt_mid: float = 1.15
    mem_window: float = 1.2
    swing: float = 0.15
    n_slope: float = 2.0
    # prefactor chosen so a fully programmed cell (vt = vt_low) at
    # vgs = vds = 1 V sources exactly 400 nA at the default geometry
    i_spec: float = 3.2935126652037966e-08
    g_min: float = 1e-14
    gate_mode: str = GATE_DIRECT
    c_il: float = 2.0e-2
    eps_fe: float = 30.0

    def __post_init__(self):
        if self.gate_mode not in (GATE_DIRECT, GATE_DIVIDER):
            raise ValueError(f"unknown gate_mode {self.gate_mode!r}")
        if min(self.w, self.l, self.swing, self.i_spec) <= 0.0:
            raise ValueError("w, l, swing, i_spec must be positive")
        if self.g_min < 0.0:
            raise ValueError("g_min must be nonnegative")

    @property
    def v_tilde(self) -> float:
        """Exponential voltage scale of the channel surrogate, V."""
        return self.swing * self.n_slope / _LN10

    @property
    def vt_low(self) -> float:
        return self.vt_mid - 0.5 * self.mem_window

    @property
    def vt_high(self) -> float:
        return self.vt_mid + 0.5 * self.mem_window


def vt_of_polarization(dev: FeFetParams, fe: FerroParams, p: float) -> float:
    """Threshold voltage for stored polarization `p` (C/m^2)."""
    return dev.vt_mid - (p / fe.ps) * 0.5 * dev.mem_window


def _softplus(x: float) -> float:
    # overflow-safe log(1 + exp(x))
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def _sigmoid(x: float) -> float:
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    ex = math.exp(x)
    return ex / (1.0 + ex)


def drain_current(dev: FeFetParams, vgs: float, vds: float, vt: float) -> float:
    """Drain current, A.  Symmetric under source/drain exchange."""
    if vds < 0.0:
        return -drain_current(dev, vgs - vds, -vds, vt)
    vtl = dev.v_tilde
    x1 = (vgs - vt) / vtl
    x2 = (vgs - vt - vds) / vtl
    chan = dev.i_spec * (dev.w / dev.l) * (_softplus(x1) ** 2 - _softplus(x2) ** 2)
    return chan + dev.g_min * vds


def drain_current_and_derivs(dev: FeFetParams, vg: float, vd: float, vs: float,
                             vt: float) -> tuple[float, float, float]:
    """Current drain->source plus partials w.r.t. (vd, vs) node voltages.

    Used by the array read solver's Newton iteration; gate voltages are
    driven so no gate partial is needed.
    """
    if vd < vs:
        i, di_dd, di_ds = drain_current_and_derivs(dev, vg, vs, vd, vt)
        return -i, -di_ds, -di_dd
    vtl = dev.v_tilde
    pref = dev.i_spec * (dev.w / dev.l)
    x1 = (vg - vs - vt) / vtl
    x2 = (vg - vd - vt) / vtl
    s1, s2 = _softplus(x1), _softplus(x2)
    g1, g2 = _sigmoid(x1), _sigmoid(x2)
    i = pref * (s1 ** 2 - s2 ** 2) + dev.g_min * (vd - vs)
    di_dvd = pref * (2.0 * s2 * g2) / vtl + dev.g_min
    di_dvs = -pref * (2.0 * s1 * g1) / vtl - dev.g_min
    return i, di_dvd, di_dvs


def gate_drive(dev: FeFetParams, fe: FerroParams, state: BranchState,
               v_gb: float, tol: float = 1e-15, max_iter: int = 200) -> float:
    """Voltage across the ferroelectric layer for a gate-to-body bias.

    Direct mode passes v_gb through.  Divider mode solves the charge
    balance  area * (P(E) + eps_fe*eps0*E) = c_il * area * (v_gb - v_fe)
    with a damped Newton iteration on v_fe; `tol` is the absolute residual
    charge in Coulombs.
    """
    if dev.gate_mode == GATE_DIRECT:
        return v_gb

    area = fe.area

    def residual(v_fe: float) -> float:
        e = v_fe / fe.t_fe
        q_fe = ferro.branch_polarization(fe, state, e) + dev.eps_fe * EPS0 * e
        return area * (dev.c_il * (v_gb - v_fe) - q_fe)

    v_fe = v_gb * dev.c_il / (dev.c_il + dev.eps_fe * EPS0 / fe.t_fe)
    r = residual(v_fe)
    h = 1e-6 * max(1.0, abs(v_gb))
    for _ in range(max_iter):
        if abs(r) < tol:
            return v_fe
        dr = (residual(v_fe + h) - residual(v_fe - h)) / (2.0 * h)
        if dr == 0.0:
            break
        step = -r / dr
        damp = 1.0
        while damp > 1e-6:
            v_new = v_fe + damp * step
            r_new = residual(v_new)
            if abs(r_new) < abs(r):
                v_fe, r = v_new, r_new
                break
            damp *= 0.5
        else:
            break
    if abs(r) >= tol:
        raise RuntimeError(
            f"gate divider did not converge: residual {r:.3e} C at v_gb={v_gb}")
    return v_fe


def write_cell(dev: FeFetParams, fe: FerroParams, state: BranchState,
               v_gb: float, duration: float) -> BranchState:
    """Apply a gate-to-body write pulse, then let the field relax.

    Drain and source are held at equal potential during writes, so the
    pulse acts purely through the gate stack.  Mutates and returns `state`.
    """
    v_fe = gate_drive(dev, fe, state, v_gb)
    ferro.apply_pulse(fe, state, v_fe, duration)
    ferro.settle(fe, state)
    return state


def cell_vt(dev: FeFetParams, fe: FerroParams, state: BranchState) -> float:
    return vt_of_polarization(dev, fe, state.p)


def read_current(dev: FeFetParams, fe: FerroParams, state: BranchState,
                 vgs: float, vds: float) -> float:
    """Drain current of a single isolated cell at the given bias."""
    return drain_current(dev, vgs, vds, cell_vt(dev, fe, state))
