"""Audit the mixed write scheme, then watch it hold up in a real array.

First the closed-form exposure audit (what every unselected cell group
sees during a write), then the full disturb matrix simulated on a 16x16
array, then a word write with readback.

Run:  python3 demos/demo_write_disturb.py
"""

from fefetsim import biasing, experiments
from fefetsim.biasing import SchemeKind, Topology
from fefetsim.config import load_config, make_device, make_ferro
from fefetsim.engine import ArrayState


def main():
    cfg, _ = load_config()

    print("== exposure audit, mixed scheme at the operating point ==")
    report = biasing.verify_scheme(cfg.v_w0, cfg.v_w1, SchemeKind.MIXED)
    for f in report.findings:
        print(f"  {f.op:7} {f.group.value:12} {f.v_gb:+6.2f} V "
              f"(margin {f.margin:+.2f} V) -> {f.flag}")
    print(f"  any disturb: {report.any_disturb}")

    print("\n== single-write disturb matrix, 16x16 ==")
    res = experiments.disturb_matrix(cfg, rows=16, cols=16)
    flips = [e for e in res.entries if e.read_logic != e.expected_logic]
    print(f"  16 cases (4 groups x 2 states x 2 ops): "
          f"{len(flips)} logic flips")
    print(f"  band separation (min '1' / max '0'): "
          f"{res.summary['band_separation']:.0f}")

    print("\n== two-cycle word write, 8x8 ==")
    array = ArrayState(Topology.CAND, 8, 8, make_ferro(cfg), make_device(cfg))
    for word in (0x00, 0x5A, 0xFF):
        cycles = experiments.write_word(cfg, array, 0, word)
        readback, _ = experiments.read_word(cfg, array, 0)
        ok = "ok" if readback == word else "MISMATCH"
        print(f"  0x{word:02X} -> {cycles} cycles -> readback "
              f"0x{readback:02X} {ok}")


if __name__ == "__main__":
    main()
