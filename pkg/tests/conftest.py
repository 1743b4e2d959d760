from __future__ import annotations

import pytest

from cimellin.cayley import AuxPlacement, LaurentSystem, build_phase, cayley_matrix
from cimellin.mirror import MirrorInput

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def acampo_system() -> LaurentSystem:
    return LaurentSystem(2, (((3, 0), (0, 2)), ((2, 0), (0, 3))))


def three_curves() -> LaurentSystem:
    return LaurentSystem(2, (((3, 0), (0, 2)), ((2, 0), (0, 3)), ((5, 0), (0, 5))))


def projective(n: int, ells: list[int]) -> LaurentSystem:
    polys = [(tuple([1] * (n + 1)),)]
    start = 0
    for l in ells:
        block = tuple(tuple(int(j == start + t) for j in range(n + 1)) for t in range(l))
        polys.append(block + (tuple([0] * (n + 1)),))
        start += l
    names = tuple(f"x{i}" for i in range(n + 1))
    return LaurentSystem(n + 1, tuple(polys), names, (True,) + (False,) * len(ells))


def _mono(n: int, d: dict[int, int]) -> tuple[int, ...]:
    v = [0] * n
    for i, e in d.items():
        v[i] = e
    return tuple(v)


def schimmrigk_input() -> MirrorInput:
    rows = [
        _mono(7, {0: 3}),
        _mono(7, {1: 3}),
        _mono(7, {2: 3}),
        _mono(7, {3: 3}),
        _mono(7, {1: 1, 4: 3}),
        _mono(7, {2: 1, 5: 3}),
        _mono(7, {3: 1, 6: 3}),
    ]
    return MirrorInput(7, rows, ((1, 2, 3), (0, 4, 5, 6)), (4, 3), tuple(f"x{i}" for i in range(7)))


def chain_input() -> MirrorInput:
    rows = [(7, 0, 0, 0, 0), (0, 7, 0, 1, 0), (0, 0, 7, 0, 1), (0, 0, 0, 3, 0), (0, 0, 0, 0, 3)]
    return MirrorInput(5, rows, ((0, 1, 2, 3, 4),), (5,), tuple(f"x{i + 1}" for i in range(5)))


def fermat_input(n: int = 3) -> MirrorInput:
    rows = [tuple(n * int(i == j) for j in range(n)) for i in range(n)]
    return MirrorInput(n, rows, (tuple(range(n)),), (n,), tuple(f"x{i + 1}" for i in range(n)))


@pytest.fixture
def acampo():
    return acampo_system()


@pytest.fixture
def acampo_cm():
    return cayley_matrix(build_phase(acampo_system()))


@pytest.fixture
def l3_cm():
    return cayley_matrix(build_phase(three_curves(), AuxPlacement((7,))))


@pytest.fixture
def l2_cm():
    return cayley_matrix(build_phase(three_curves(), AuxPlacement((4,))))
