import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mods = [m for name, m in list(sys.modules.items()) if name.rsplit(".", 1)[-1] == "test_acceptance"]
    RESULTS = [line for m in mods for line in getattr(m, "RESULTS", [])]
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
