"""Array bias plans for write/read and a write-scheme disturb audit.

Two array flavors are supported:

* ``AND``: bit line and source line run per column, one transistor per
  cell, common grounded bulk.  Writes use a thirds (V/3) inhibit scheme
  on both polarities.
* ``CAND``: source lines run per row and a dedicated per-column bulk
  line drives the back gate, so cells in a column share their bulk.
  Writes use thirds for '0' and halves (V/2) for '1'; the halves scheme
  puts exactly 0 V on the diagonal (unselected row and column) cells.

A bias plan assigns every line either a voltage or ``HIGH_Z`` (floating).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Topology(enum.Enum):
    AND = "and"
    CAND = "cand"


class CellGroup(enum.Enum):
    SEL = "selected"
    SAME_ROW = "same-row"
    SAME_COL = "same-column"
    DIAG = "diagonal"


HIGH_Z = None  # line assignment sentinel: floating / high impedance


@dataclass
class BiasPlan:
    """Voltage assignment for every line of an array, one operation."""

    topology: Topology
    rows: int
    cols: int
    op: str
    sel_row: int
    sel_cols: tuple[int, ...]
    lines: dict[str, float | None] = field(default_factory=dict)

    def v(self, name: str) -> float | None:
        return self.lines[name]

    def driven(self, name: str) -> float:
        val = self.lines[name]
        if val is None:
            raise ValueError(f"line {name} is HighZ but a driven value is required")
        return val


def _check_selection(rows: int, cols: int, sel_row: int, sel_cols) -> tuple[int, ...]:
    if rows < 1 or cols < 1:
        raise ValueError("array must have at least one row and column")
    if not 0 <= sel_row < rows:
        raise ValueError(f"selected row {sel_row} outside 0..{rows - 1}")
    sel = tuple(sorted(set(sel_cols)))
    if not sel:
        raise ValueError("selected column set must be nonempty")
    if sel[0] < 0 or sel[-1] >= cols:
        raise ValueError("selected column outside array")
    return sel


def cand_write0_bias(rows: int, cols: int, sel_row: int, sel_cols,
                     v_w0: float) -> BiasPlan:
    """Thirds-scheme erase of selected cells (v_w0 < 0 on the gate)."""
    sel = _check_selection(rows, cols, sel_row, sel_cols)
    lines: dict[str, float | None] = {}
    for r in range(rows):
        lines[f"WL{r}"] = v_w0 if r == sel_row else v_w0 / 3.0
        lines[f"SL{r}"] = 0.0
    for c in range(cols):
        lines[f"BuL{c}"] = 0.0 if c in sel else 2.0 * v_w0 / 3.0
        lines[f"BL{c}"] = 0.0
    return BiasPlan(Topology.CAND, rows, cols, "write0", sel_row, sel, lines)


def cand_write1_bias(rows: int, cols: int, sel_row: int, sel_cols,
                     v_w1: float) -> BiasPlan:
    """Halves-scheme program of selected cells (v_w1 > 0 on the gate)."""
    sel = _check_selection(rows, cols, sel_row, sel_cols)
    lines: dict[str, float | None] = {}
    for r in range(rows):
        lines[f"WL{r}"] = v_w1 / 2.0 if r == sel_row else 0.0
        lines[f"SL{r}"] = 0.0
    for c in range(cols):
        lines[f"BuL{c}"] = -v_w1 / 2.0 if c in sel else 0.0
        lines[f"BL{c}"] = 0.0
    return BiasPlan(Topology.CAND, rows, cols, "write1", sel_row, sel, lines)


def cand_read_bias(rows: int, cols: int, sel_row: int, sel_cols,
                   v_wl: float, v_sl: float) -> BiasPlan:
    """Read selected cells: row source line driven, column bit lines sensed
    at virtual ground, everything unselected floating or off."""
    sel = _check_selection(rows, cols, sel_row, sel_cols)
    lines: dict[str, float | None] = {}
    for r in range(rows):
        lines[f"WL{r}"] = v_wl if r == sel_row else 0.0
        lines[f"SL{r}"] = v_sl if r == sel_row else HIGH_Z
    for c in range(cols):
        lines[f"BuL{c}"] = 0.0
        lines[f"BL{c}"] = 0.0 if c in sel else HIGH_Z
    return BiasPlan(Topology.CAND, rows, cols, "read", sel_row, sel, lines)


def and_write_bias(rows: int, cols: int, sel_row: int, sel_cols,
                   v_w: float) -> BiasPlan:
    """Thirds-scheme write for either polarity (sign of v_w picks it)."""
    sel = _check_selection(rows, cols, sel_row, sel_cols)
    op = "write1" if v_w >= 0.0 else "write0"
    lines: dict[str, float | None] = {}
    for r in range(rows):
        lines[f"WL{r}"] = v_w if r == sel_row else v_w / 3.0
    for c in range(cols):
        col_v = 0.0 if c in sel else 2.0 * v_w / 3.0
        lines[f"BL{c}"] = col_v
        lines[f"SL{c}"] = col_v
    return BiasPlan(Topology.AND, rows, cols, op, sel_row, sel, lines)


def and_read_bias(rows: int, cols: int, sel_row: int, sel_cols,
                  v_wl: float, v_sl: float) -> BiasPlan:
    """Read selected cells: column bit lines driven, source lines grounded."""
    sel = _check_selection(rows, cols, sel_row, sel_cols)
    lines: dict[str, float | None] = {}
    for r in range(rows):
        lines[f"WL{r}"] = v_wl if r == sel_row else 0.0
    for c in range(cols):
        lines[f"BL{c}"] = v_sl if c in sel else HIGH_Z
        lines[f"SL{c}"] = 0.0
    return BiasPlan(Topology.AND, rows, cols, "read", sel_row, sel, lines)


def cell_write_voltage(plan: BiasPlan, row: int, col: int) -> float:
    """Gate-to-body voltage a cell sees under a write plan.

    CAND cells have their body on the column bulk line.  AND cells sit in
    a common bulk, but with drain and source inhibited to the same column
    voltage the effective gate drive is referenced to the channel, i.e.
    the mean of the two channel terminals.
    """
    wl = plan.driven(f"WL{row}")
    if plan.topology is Topology.CAND:
        return wl - plan.driven(f"BuL{col}")
    return wl - 0.5 * (plan.driven(f"BL{col}") + plan.driven(f"SL{col}"))


def classify_cell(plan: BiasPlan, row: int, col: int) -> CellGroup:
    row_sel = row == plan.sel_row
    col_sel = col in plan.sel_cols
    if row_sel and col_sel:
        return CellGroup.SEL
    if row_sel:
        return CellGroup.SAME_ROW
    if col_sel:
        return CellGroup.SAME_COL
    return CellGroup.DIAG


# --------------------------------------------------------------------------
# Write-scheme audit


class SchemeKind(enum.Enum):
    VDD3_ONLY = "vdd3"      # thirds inhibit for both polarities
    VDD2_ONLY = "vdd2"      # halves inhibit for both polarities
    MIXED = "mixed"         # thirds for '0', halves for '1'

FLAG_PASS = "pass"
FLAG_PARTIAL = "partial-risk"
FLAG_DISTURB = "disturb"

#: default fraction of the switching threshold above which an exposure is
#: flagged as partial-risk
PARTIAL_MARGIN = 2.0 / 3.0


@dataclass(frozen=True)
class SchemeFinding:
    op: str
    group: CellGroup
    v_gb: float
    margin: float    # switching threshold minus exposure magnitude, V
    flag: str


@dataclass
class SchemeReport:
    scheme: SchemeKind
    v_w0: float
    v_w1: float
    findings: list[SchemeFinding]

    @property
    def any_disturb(self) -> bool:
        return any(f.flag == FLAG_DISTURB for f in self.findings)

    @property
    def any_partial(self) -> bool:
        return any(f.flag != FLAG_PASS for f in self.findings)

    def worst(self) -> SchemeFinding:
        order = {FLAG_PASS: 0, FLAG_PARTIAL: 1, FLAG_DISTURB: 2}
        return max(self.findings, key=lambda f: (order[f.flag], abs(f.v_gb)))


def _inhibit_levels(style: str, v_w: float) -> tuple[float, float, float, float]:
    """(WL selected, WL unselected, column selected, column unselected)."""
    if style == "vdd3":
        return v_w, v_w / 3.0, 0.0, 2.0 * v_w / 3.0
    if style == "vdd2":
        return v_w / 2.0, 0.0, -v_w / 2.0, 0.0
    raise ValueError(style)


def _group_exposures(style: str, v_w: float) -> dict[CellGroup, float]:
    wl_s, wl_u, col_s, col_u = _inhibit_levels(style, v_w)
    return {
        CellGroup.SEL: wl_s - col_s,
        CellGroup.SAME_ROW: wl_s - col_u,
        CellGroup.SAME_COL: wl_u - col_s,
        CellGroup.DIAG: wl_u - col_u,
    }


def verify_scheme(v_w0: float, v_w1: float,
                  scheme: SchemeKind = SchemeKind.MIXED,
                  thresholds: tuple[float, float] | None = None,
                  partial_margin: float = PARTIAL_MARGIN) -> SchemeReport:
    """Audit unselected-cell exposures of a write scheme.

    `thresholds` are the minimum absolute gate voltages that flip a cell to
    '0' and to '1' respectively; they default to (|v_w0|, v_w1), i.e. the
    write voltages are assumed to be chosen at the switching minimum.  An
    exposure whose magnitude reaches the threshold for its polarity is a
    `disturb`; reaching `partial_margin` of it is a `partial-risk`.
    """
    if v_w0 >= 0.0 or v_w1 <= 0.0:
        raise ValueError("expected v_w0 < 0 < v_w1")
    thr0, thr1 = thresholds if thresholds is not None else (abs(v_w0), v_w1)
    if thr0 <= 0.0 or thr1 <= 0.0:
        raise ValueError("thresholds must be positive")

    style0 = "vdd2" if scheme is SchemeKind.VDD2_ONLY else "vdd3"
    style1 = "vdd3" if scheme is SchemeKind.VDD3_ONLY else "vdd2"

    findings = []
    for op, style, v_w in (("write0", style0, v_w0), ("write1", style1, v_w1)):
        for group, v_gb in _group_exposures(style, v_w).items():
            if group is CellGroup.SEL:
                continue
            thr = thr1 if v_gb > 0.0 else thr0
            mag = abs(v_gb)
            if mag >= thr:
                flag = FLAG_DISTURB
            elif mag >= partial_margin * thr:
                flag = FLAG_PARTIAL
            else:
                flag = FLAG_PASS
            findings.append(SchemeFinding(op, group, v_gb, thr - mag, flag))
    return SchemeReport(scheme, v_w0, v_w1, findings)
