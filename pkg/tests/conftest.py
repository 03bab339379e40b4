def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion after the run."""
    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            when = getattr(rep, "when", "call")
            if "test_acceptance.py" not in nodeid or when != "call":
                continue
            name = nodeid.split("::")[-1]
            results[name] = "PASS" if status == "passed" else "FAIL"
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(f"{name}: {results[name]}")
