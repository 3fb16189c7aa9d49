import sys
from math import gcd

from hilbgenus.arith import is_prime, is_squarefree

GRID_P = [2] + [p for p in range(5, 200, 4) if is_prime(p)]
ODD_GRID_P = GRID_P[1:]


def grid_instances(a_max: int = 500, ps=GRID_P):
    """Valid (p, a) with a < a_max, ascending p then a."""
    for p in ps:
        for a in range(1, a_max):
            if is_squarefree(a) and gcd(a, p) == 1 and (p != 2 or a % 2):
                yield p, a


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
