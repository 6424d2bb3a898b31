"""Shared pytest config: one PASS/FAIL summary line per acceptance criterion."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            parts = name.split("_")
            if len(parts) < 3 or parts[0] != "test":
                continue
            try:
                num = int(parts[1])
            except ValueError:
                continue
            label = "_".join(parts[2:])
            ok = outcome == "passed"
            prev_ok = rows.get(num, (label, True))[1]
            rows[num] = (label, prev_ok and ok)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(rows):
        label, ok = rows[num]
        terminalreporter.write_line(
            f"ACCEPTANCE {num:2d} ({label}): {'PASS' if ok else 'FAIL'}")
