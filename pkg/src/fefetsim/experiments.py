"""Seeded experiment campaigns over the device and array models.

Each campaign is a pure function of a RunConfig (plus explicit knobs) and
returns a result object holding tabular rows ready for CSV export and a
summary dict; nothing here touches the filesystem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytics, biasing, config, device, engine, ferro
from .biasing import Topology
from .config import RunConfig

POWERS_OF_TWO = (2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048)


# --------------------------------------------------------------------------
# Nominal written states (shared by several campaigns)


@dataclass(frozen=True)
class NominalCell:
    """Per-state threshold voltages and single-cell read currents after a
    nominal write sequence (program, erase-from-programmed, half-disturbed)."""

    vt_one: float
    vt_zero: float
    vt_zero_disturbed: float
    i_one: float
    i_zero: float
    i_zero_disturbed: float


def nominal_cell(cfg: RunConfig) -> NominalCell:
    fe = config.make_ferro(cfg)
    dev = config.make_device(cfg)
    one = ferro.negative_saturation(fe)
    device.write_cell(dev, fe, one, cfg.v_w1, cfg.t_pulse)
    zero = one.copy()
    device.write_cell(dev, fe, zero, cfg.v_w0, cfg.t_pulse)
    zdist = zero.copy()
    device.write_cell(dev, fe, zdist, cfg.v_w1 / 2.0, cfg.t_pulse)

    def cur(st):
        return device.read_current(dev, fe, st, cfg.v_wl, cfg.v_sl)

    return NominalCell(
        vt_one=device.cell_vt(dev, fe, one),
        vt_zero=device.cell_vt(dev, fe, zero),
        vt_zero_disturbed=device.cell_vt(dev, fe, zdist),
        i_one=cur(one), i_zero=cur(zero), i_zero_disturbed=cur(zdist),
    )


def _make_array(cfg: RunConfig, topology: Topology, rows: int, cols: int,
                dev=None, fe=None) -> engine.ArrayState:
    return engine.ArrayState(
        topology=topology, rows=rows, cols=cols,
        fe=fe if fe is not None else config.make_ferro(cfg),
        dev=dev if dev is not None else config.make_device(cfg),
        parasitics=config.make_parasitics(cfg),
    )


# --------------------------------------------------------------------------
# Bit-line length sweep


@dataclass(frozen=True)
class BitlineRow:
    rows: int
    topology: str
    i_read0: float
    i_read1: float
    window_ratio: float


@dataclass
class BitlineSweepResult:
    rows: list[BitlineRow]
    summary: dict

    header = ["rows", "topology", "i_read0_amps", "i_read1_amps", "window_ratio"]

    def table(self):
        return [(r.rows, r.topology, r.i_read0, r.i_read1, r.window_ratio)
                for r in self.rows]


def long_bitline_sweep(cfg: RunConfig,
                       sizes: tuple[int, ...] = POWERS_OF_TWO) -> BitlineSweepResult:
    """Worst-case single-bit read current vs array size for both flavors.

    Worst case: every unselected cell conducts as hard as possible (stores
    a saturated '1'); the selected cell stores either value saturated.
    """
    dev = config.make_device(cfg)
    vt_on, vt_off = dev.vt_low, dev.vt_high
    rows = []
    for topo in (Topology.AND, Topology.CAND):
        for n in sizes:
            i1, leak1 = engine.column_readout_with_leak(
                dev, topo, n, n, vt_on, vt_on, cfg.v_wl, cfg.v_sl)
            i0, leak0 = engine.column_readout_with_leak(
                dev, topo, n, n, vt_off, vt_on, cfg.v_wl, cfg.v_sl)
            read1, read0 = i1 + leak1, i0 + leak0
            rows.append(BitlineRow(n, topo.value, read0, read1, read1 / read0))
    by = {(r.topology, r.rows): r for r in rows}
    summary = {
        "and_read0_at_2048": by[("and", 2048)].i_read0,
        "cand_read0_at_2048": by[("cand", 2048)].i_read0,
        "cand_on_off_at_2048": by[("cand", 2048)].window_ratio,
        "and_over_cand_read0_at_2048":
            by[("and", 2048)].i_read0 / by[("cand", 2048)].i_read0,
    }
    return BitlineSweepResult(rows, summary)


# --------------------------------------------------------------------------
# Single-op disturb matrix


@dataclass(frozen=True)
class DisturbEntry:
    group: str
    initial_state: int
    op: str
    i_before: float
    i_after: float
    expected_logic: int
    read_logic: int


@dataclass
class DisturbMatrixResult:
    entries: list[DisturbEntry]
    summary: dict

    header = ["group", "initial_state", "op", "i_before_amps", "i_after_amps",
              "expected_logic", "read_logic"]

    def table(self):
        return [(e.group, e.initial_state, e.op, e.i_before, e.i_after,
                 e.expected_logic, e.read_logic) for e in self.entries]


def _init_uniform(cfg: RunConfig, array: engine.ArrayState, state: int) -> None:
    """Write every cell to `state` through real row-by-row operations."""
    all_cols = range(array.cols)
    for r in range(array.rows):
        engine.apply_write(array, biasing.cand_write1_bias(
            array.rows, array.cols, r, all_cols, cfg.v_w1), cfg.t_pulse)
    for r in range(array.rows):
        engine.apply_write(array, biasing.cand_write0_bias(
            array.rows, array.cols, r, all_cols, cfg.v_w0), cfg.t_pulse)
    if state == 1:
        for r in range(array.rows):
            engine.apply_write(array, biasing.cand_write1_bias(
                array.rows, array.cols, r, all_cols, cfg.v_w1), cfg.t_pulse)


def _read_cell(cfg: RunConfig, array: engine.ArrayState, r: int, c: int) -> float:
    return engine.read_cells(array, r, [c], cfg.v_wl, cfg.v_sl).current(c)


def disturb_matrix(cfg: RunConfig, rows: int | None = None,
                   cols: int | None = None) -> DisturbMatrixResult:
    """All (cell group) x (initial state) x (write op) single-shot cases.

    For each case a freshly initialized array gets one write at the center
    cell and the observed cell (at the group position relative to it) is
    read before and after.
    """
    m = rows if rows is not None else cfg.rows
    n = cols if cols is not None else cfg.cols
    if m < 2 or n < 2:
        raise ValueError("disturb matrix needs at least a 2x2 array")
    sel_r, sel_c = m // 2 - 1, n // 2 - 1
    observers = {
        biasing.CellGroup.SEL: (sel_r, sel_c),
        biasing.CellGroup.SAME_ROW: (sel_r, sel_c + 1),
        biasing.CellGroup.SAME_COL: (sel_r + 1, sel_c),
        biasing.CellGroup.DIAG: (sel_r + 1, sel_c + 1),
    }
    entries = []
    for group, (obs_r, obs_c) in observers.items():
        for state in (0, 1):
            for op in ("write0", "write1"):
                array = _make_array(cfg, Topology.CAND, m, n)
                _init_uniform(cfg, array, state)
                i_before = _read_cell(cfg, array, obs_r, obs_c)
                if op == "write0":
                    plan = biasing.cand_write0_bias(m, n, sel_r, [sel_c], cfg.v_w0)
                else:
                    plan = biasing.cand_write1_bias(m, n, sel_r, [sel_c], cfg.v_w1)
                engine.apply_write(array, plan, cfg.t_pulse)
                i_after = _read_cell(cfg, array, obs_r, obs_c)
                if group is biasing.CellGroup.SEL:
                    expected = 0 if op == "write0" else 1
                else:
                    expected = state
                entries.append(DisturbEntry(
                    group.value, state, op, i_before, i_after,
                    expected, int(i_after > cfg.i_ref)))
    ones = [e.i_after for e in entries if e.expected_logic == 1]
    zeros = [e.i_after for e in entries if e.expected_logic == 0]
    summary = {
        "min_one_current": min(ones),
        "max_zero_current": max(zeros),
        "band_separation": min(ones) / max(zeros),
        "all_logic_preserved": all(e.read_logic == e.expected_logic
                                   for e in entries),
        "rows": m, "cols": n,
    }
    return DisturbMatrixResult(entries, summary)


# --------------------------------------------------------------------------
# Two-cycle word write


@dataclass(frozen=True)
class WordWriteEntry:
    word: int
    row: int
    readback: int
    match: bool
    min_one: float
    max_zero: float


@dataclass
class WordWriteResult:
    entries: list[WordWriteEntry]
    summary: dict

    header = ["word", "row", "readback", "match", "min_one_amps", "max_zero_amps"]

    def table(self):
        return [(e.word, e.row, e.readback, e.match, e.min_one, e.max_zero)
                for e in self.entries]


def write_word(cfg: RunConfig, array: engine.ArrayState, row: int,
               word: int) -> int:
    """Two-cycle word write: erase the '0' columns, then program the '1's.

    Always consumes exactly two write cycles; a cycle with no target
    columns is a timed hold (the bias ops require a nonempty selection, so
    nothing is driven during it).  Returns the cycle count.
    """
    cols = array.cols
    zeros = [c for c in range(cols) if not (word >> c) & 1]
    ones = [c for c in range(cols) if (word >> c) & 1]
    if zeros:
        engine.apply_write(array, biasing.cand_write0_bias(
            array.rows, cols, row, zeros, cfg.v_w0), cfg.t_pulse)
    if ones:
        engine.apply_write(array, biasing.cand_write1_bias(
            array.rows, cols, row, ones, cfg.v_w1), cfg.t_pulse)
    return 2


def read_word(cfg: RunConfig, array: engine.ArrayState, row: int) -> tuple[int, dict]:
    res = engine.read_cells(array, row, range(array.cols), cfg.v_wl, cfg.v_sl)
    word = 0
    for c in range(array.cols):
        if res.current(c) > cfg.i_ref:
            word |= 1 << c
    return word, res.col_currents


def word_write_demo(cfg: RunConfig, rows: int = 8, cols: int = 8,
                    words=None) -> WordWriteResult:
    """Write words with the two-cycle scheme and read them back.

    Words are written sequentially into one array (rotating through rows),
    so later words run against the disturb history of earlier ones.
    """
    if words is None:
        words = range(1 << cols)
    array = _make_array(cfg, Topology.CAND, rows, cols)
    _init_uniform(cfg, array, 0)
    entries = []
    for idx, word in enumerate(words):
        row = idx % rows
        write_word(cfg, array, row, word)
        readback, currents = read_word(cfg, array, row)
        ones = [i for c, i in currents.items() if (word >> c) & 1]
        zeros = [i for c, i in currents.items() if not (word >> c) & 1]
        entries.append(WordWriteEntry(
            word, row, readback, readback == word,
            min(ones) if ones else float("nan"),
            max(zeros) if zeros else float("nan")))
    summary = {
        "words": len(entries),
        "matches": sum(e.match for e in entries),
        "all_match": all(e.match for e in entries),
    }
    return WordWriteResult(entries, summary)


# --------------------------------------------------------------------------
# Monte Carlo variability


@dataclass
class MonteCarloResult:
    rows: list[tuple]
    summary: dict

    header = ["trial", "row", "col", "logic", "vt_volts", "i_amps"]

    def table(self):
        return self.rows


def monte_carlo(cfg: RunConfig, samples: int | None = None,
                seed: int | None = None,
                leak_rows: int = 512, leak_cols: int = 512) -> MonteCarloResult:
    """Write-voltage and geometry variability on a 2x2 array.

    Per trial: one Gaussian draw each for the erase and program voltages
    and one shared draw applied to channel width and length.  The array is
    programmed, erased, then one cell is rewritten to '1', leaving the
    three '0' cells at the three disturb positions.  Read currents include
    the sneak leakage a large (leak_rows x leak_cols) array would add.
    """
    n = samples if samples is not None else cfg.samples
    rng = np.random.default_rng(seed if seed is not None else cfg.seed)
    dv0 = rng.normal(0.0, cfg.sigma_v_w0, n)
    dv1 = rng.normal(0.0, cfg.sigma_v_w1, n)
    dwl = rng.normal(0.0, cfg.sigma_wl, n)

    dev_nom = config.make_device(cfg)
    _, i_leak_large = engine.column_readout_with_leak(
        dev_nom, Topology.CAND, leak_rows, leak_cols,
        dev_nom.vt_high, dev_nom.vt_low, cfg.v_wl, cfg.v_sl)

    fe = config.make_ferro(cfg)
    rows_out = []
    trial_ratios = []
    ones_all, zeros_all = [], []
    for t in range(n):
        v_w0 = cfg.v_w0 + dv0[t]
        v_w1 = cfg.v_w1 + dv1[t]
        dev = config.make_device(cfg, width=cfg.width + dwl[t],
                                 length=cfg.length + dwl[t])
        trial_cfg = (v_w0, v_w1)
        array = _make_array(cfg, Topology.CAND, 2, 2, dev=dev, fe=fe)
        for r in range(2):
            engine.apply_write(array, biasing.cand_write1_bias(
                2, 2, r, (0, 1), v_w1), cfg.t_pulse)
        for r in range(2):
            engine.apply_write(array, biasing.cand_write0_bias(
                2, 2, r, (0, 1), v_w0), cfg.t_pulse)
        engine.apply_write(array, biasing.cand_write1_bias(
            2, 2, 0, (0,), v_w1), cfg.t_pulse)

        currents = {}
        for r in range(2):
            res = engine.read_cells(array, r, (0, 1), cfg.v_wl, cfg.v_sl)
            for c in (0, 1):
                currents[(r, c)] = res.current(c) + i_leak_large
        ones, zeros = [], []
        for (r, c), i in sorted(currents.items()):
            logic = 1 if (r, c) == (0, 0) else 0
            (ones if logic else zeros).append(i)
            rows_out.append((t, r, c, logic, array.vt(r, c), i))
        trial_ratios.append(min(ones) / max(zeros))
        ones_all += ones
        zeros_all += zeros

    summary = {
        "samples": n,
        "seed": seed if seed is not None else cfg.seed,
        "min_on_off_ratio": min(trial_ratios),
        "global_min_one": min(ones_all),
        "global_max_zero": max(zeros_all),
        "band_overlap": min(ones_all) <= max(zeros_all),
        "added_leak_amps": i_leak_large,
    }
    return MonteCarloResult(rows_out, summary)


# --------------------------------------------------------------------------
# Read power vs array size


@dataclass
class PowerSweepResult:
    rows: list[tuple]
    summary: dict

    header = ["size", "p_select_watts", "p_wordline_watts", "p_leak_watts",
              "p_total_watts"]

    def table(self):
        return self.rows


def power_sweep(cfg: RunConfig,
                sizes: tuple[int, ...] = (2, 4, 8, 16, 32)) -> PowerSweepResult:
    """Peak single-bit read power vs square array size.

    Peak means the strongest possible cell (fully programmed) conducts; the
    word-line energy covers the gate stacks of the whole selected row (the
    ferroelectric and interlayer capacitances in series) plus the poly wire.
    """
    dev = config.make_device(cfg)
    par = config.make_parasitics(cfg)
    fe = config.make_ferro(cfg)
    c_fe = dev.eps_fe * device.EPS0 / fe.t_fe * (dev.w * dev.l)
    c_il = dev.c_il * (dev.w * dev.l)
    gate_cap = c_fe * c_il / (c_fe + c_il)
    i_high = device.drain_current(dev, cfg.v_wl, cfg.v_sl, dev.vt_low)
    f_read = 1.0 / cfg.t_pulse
    rows = []
    for n in sizes:
        c_wl = n * (par.seg_capacitance(par.pitch_x, poly=True) + gate_cap)
        _, i_leak = engine.column_readout_with_leak(
            dev, Topology.CAND, n, n, dev.vt_high, dev.vt_low,
            cfg.v_wl, cfg.v_sl)
        bd = analytics.read_power(
            n_zeros=0, n_ones=1, i_low=0.0, i_high=i_high,
            v_read=cfg.v_sl, c_wordline=c_wl, v_wl=cfg.v_wl, f_read=f_read,
            i_leak=i_leak)
        rows.append((n, bd.p_select, bd.p_wordline, bd.p_leak, bd.total))
    totals = [r[4] for r in rows]
    summary = {
        "flatness": max(totals) / min(totals),
        "max_leak_share": max(r[3] / r[4] for r in rows),
        "word_power_max_8x": analytics.select_line_power_max(
            8, i_high, cfg.v_sl),
    }
    return PowerSweepResult(rows, summary)


# --------------------------------------------------------------------------
# Accumulative half-select disturb


@dataclass
class AccumulativeDisturbResult:
    rows: list[tuple]
    summary: dict

    header = ["pulses", "vt_volts", "delta_vt_volts", "crossed_half_window"]

    def table(self):
        return self.rows


def accumulative_disturb_sweep(cfg: RunConfig,
                               max_pulses: int = 10000) -> AccumulativeDisturbResult:
    """Half-select pulses applied repeatedly to a written '0' cell."""
    fe = config.make_ferro(cfg)
    dev = config.make_device(cfg)
    st = ferro.negative_saturation(fe)
    device.write_cell(dev, fe, st, cfg.v_w1, cfg.t_pulse)
    device.write_cell(dev, fe, st, cfg.v_w0, cfg.t_pulse)
    vt0 = device.cell_vt(dev, fe, st)

    checkpoints = sorted({int(round(10 ** (k / 8.0)))
                          for k in range(0, int(8 * math.log10(max_pulses)) + 1)}
                         | {1, max_pulses})
    rows = []
    pulses_done = 0
    for target in checkpoints:
        if target > max_pulses:
            break
        engine.accumulate_disturb(dev, fe, st, cfg.v_w1 / 2.0,
                                  target - pulses_done, cfg.t_pulse)
        pulses_done = target
        vt = device.cell_vt(dev, fe, st)
        delta = vt0 - vt
        rows.append((target, vt, delta, abs(delta) > dev.mem_window / 2.0))
    summary = {
        "initial_vt": vt0,
        "final_vt": rows[-1][1],
        "final_delta_vt": rows[-1][2],
        "crossed_half_window": rows[-1][3],
        "monotone_drift": all(rows[i + 1][2] >= rows[i][2] - 1e-12
                              for i in range(len(rows) - 1)),
    }
    return AccumulativeDisturbResult(rows, summary)


# --------------------------------------------------------------------------
# Device sweep (for the CLI's device characterization command)


def device_transfer_sweep(cfg: RunConfig, vgs_points: int = 121):
    """Transfer curves for both stored states; returns (header, rows)."""
    dev = config.make_device(cfg)
    header = ["vgs_volts", "ids_amps_state0", "ids_amps_state1"]
    rows = []
    for k in range(vgs_points):
        vgs = 3.0 * k / (vgs_points - 1)
        rows.append((vgs,
                     device.drain_current(dev, vgs, cfg.v_sl, dev.vt_high),
                     device.drain_current(dev, vgs, cfg.v_sl, dev.vt_low)))
    return header, rows


def hysteresis_sweep(cfg: RunConfig, nsteps: int = 400):
    """Quasi-static polarization loop; returns (header, rows)."""
    fe = config.make_ferro(cfg)
    amplitude = max(cfg.v_w1, 2.0 * cfg.vc_program)
    pts = ferro.trace_loop(fe, amplitude, nsteps)
    return ["v_volts", "p_c_per_m2"], pts
