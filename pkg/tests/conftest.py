import pytest

from baranyai_ldc.baranyai import partition_from_classes
from baranyai_ldc.ldc import build_code

# Incidence matrix of K_6^2, columns 12, 13, ..., 56.
INCIDENCE_6_2 = [
    "111110000000000",
    "100001111000000",
    "010001000111000",
    "001000100100110",
    "000100010010101",
    "000010001001011",
]

# Generator matrix of the n=7, u=2 code, columns 12, 13, ..., 67.
GENERATOR_7_2 = [
    "000000111111111111111",
    "011111000001111111111",
    "101111011110000111111",
    "110111101110111000111",
    "111011110111011011001",
    "111101111011101101010",
    "111110111101110110100",
]

# A partition of K_6^2 into five classes; relabeled it gives the index-7 decoding classes.
PARTITION_6_2 = [
    [(1, 2), (3, 4), (5, 6)],
    [(1, 3), (2, 5), (4, 6)],
    [(1, 4), (2, 6), (3, 5)],
    [(1, 5), (2, 4), (3, 6)],
    [(1, 6), (2, 3), (4, 5)],
]


@pytest.fixture(scope="session")
def partition62():
    return partition_from_classes(6, 2, PARTITION_6_2)


@pytest.fixture(scope="session")
def code72(partition62):
    """The rho=3, u=2 code built on PARTITION_6_2."""
    return build_code(3, 2, partition=partition62)


@pytest.fixture(scope="session")
def code72_auto():
    return build_code(3, 2)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" in props:
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL", props.get("detail", "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict, detail in sorted(lines, key=lambda t: int(t[0].split(".")[0])):
            terminalreporter.write_line(f"{verdict}  {name}  {detail}")
