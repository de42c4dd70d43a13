import pytest

from onpminer import GapConstraint, Sequence, SequenceDatabase

EX3 = "AACACCTC"
EX8 = "AACACCTCAACGCTC"
DNA = "ACGT"

# Frequent patterns of EX3 at gap [0,1], minsup 2.
EX3_FREQUENT = {
    "A", "C", "A[0,1]C", "C[0,1]C", "A[0,1]¬GC", "A[0,1]¬TC", "C[0,1]¬CC", "C[0,1]¬GC",
    "A[0,1]C[0,1]C", "A[0,1]C[0,1]¬CC", "A[0,1]¬GC[0,1]¬CC", "A[0,1]¬TC[0,1]¬CC",
    "A[0,1]C[0,1]¬GC", "A[0,1]¬GC[0,1]¬GC", "A[0,1]¬TC[0,1]¬GC", "A[0,1]¬GC[0,1]C",
    "A[0,1]¬TC[0,1]C",
}

EX8_F2 = {"A[0,2]C", "C[0,2]A", "C[0,2]C", "A[0,2]¬GC", "A[0,2]¬TC", "C[0,2]¬CC", "C[0,2]¬GC"}

G01 = GapConstraint(0, 1)
G02 = GapConstraint(0, 2)


@pytest.fixture
def ex3_db():
    return SequenceDatabase([Sequence(EX3)], DNA)


@pytest.fixture
def ex8_db():
    return SequenceDatabase([Sequence(EX8)], DNA)


_acceptance_lines = []


def record_acceptance(line: str):
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
