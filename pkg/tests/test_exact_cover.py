import logging
import random

import pytest
from helpers import brute_force_covers, random_solvable_instance

from cltwe.errors import FormatError, SearchLimitExceeded, WitnessError
from cltwe.exact_cover import (ExactCoverInstance, solve, verify, witness_from_text,
                               witness_to_text)
from cltwe.reductions import SudokuPuzzle, sudoku_to_cover

TOY = ExactCoverInstance(3, [[0, 1], [2], [0, 2]])


def test_verify_examples():
    assert verify(TOY, [0, 1])
    assert not verify(TOY, [1, 2])
    assert not verify(TOY, [])


def test_verify_out_of_range():
    with pytest.raises(WitnessError):
        verify(TOY, [3])


def test_solve_toy_matches_brute_force():
    assert brute_force_covers(TOY) == [(0, 1)]
    assert solve(TOY) == (0, 1)


def test_solve_uncoverable():
    assert solve(ExactCoverInstance(2, [[0], [0]])) is None


def test_solve_blank_4x4_sudoku():
    instance, _ = sudoku_to_cover(SudokuPuzzle.blank(4))
    assert (instance.universe_size, len(instance.sets)) == (64, 64)
    w = solve(instance)
    assert len(w) == 16 and verify(instance, w)


def test_node_limit_is_distinct_from_no_solution():
    instance, _ = sudoku_to_cover(SudokuPuzzle.blank(9))
    with pytest.raises(SearchLimitExceeded):
        solve(instance, node_limit=5)


def test_solver_agrees_with_brute_force():
    rng = random.Random(2024)
    for trial in range(150):
        if trial % 2:
            instance, _ = random_solvable_instance(rng, max_u=8, max_sets=15)
        else:
            U = rng.randint(1, 7)
            sets = [rng.sample(range(U), rng.randint(1, U)) for _ in range(rng.randint(1, 15))]
            instance = ExactCoverInstance(U, sets)
        covers = brute_force_covers(instance)
        found = solve(instance)
        if covers:
            assert found in covers
            assert verify(instance, found)
            assert sum(len(instance.sets[i]) for i in found) == instance.universe_size
        else:
            assert found is None


def test_solver_is_deterministic():
    instance, _ = sudoku_to_cover(SudokuPuzzle.blank(4))
    assert solve(instance) == solve(instance)


def test_empty_sets_dropped(caplog):
    with caplog.at_level(logging.WARNING):
        inst = ExactCoverInstance(2, [[0], [], [1]])
    assert inst.sets == ((0,), (1,))
    assert inst.dropped == (1,)
    assert "dropped 1 empty" in caplog.text
    assert solve(inst) == (0, 1)


def test_sets_are_normalized():
    inst = ExactCoverInstance(4, [[3, 1, 1]])
    assert inst.sets == ((1, 3),)
    with pytest.raises(ValueError):
        ExactCoverInstance(2, [[2]])


def test_text_round_trip():
    text = TOY.to_text()
    assert text == "3 3\n0 1\n2\n0 2\n"
    assert ExactCoverInstance.from_text(text) == TOY
    assert ExactCoverInstance.from_text(text.encode()) == TOY


def test_text_comments():
    text = "# toy\n3 3\n0 1\n# middle\n2\n0 2\n"
    assert ExactCoverInstance.from_text(text) == TOY


@pytest.mark.parametrize("text", [
    "3 3\n0 1\n2\n",          # missing a set
    "3 2\n0 1\n2\n0 2\n",     # extra set
    "3\n0 1\n",               # bad header
    "3 1\n1 0\n",             # unsorted
    "3 1\n0 3\n",             # out of range
    "3 1\n0 x\n",             # junk
    "3 3\n0 1\n2\n0 2",       # no trailing newline
])
def test_text_errors(text):
    with pytest.raises(FormatError):
        ExactCoverInstance.from_text(text)


def test_every_truncation_is_rejected():
    text = TOY.to_text()
    for cut in range(len(text)):
        with pytest.raises(FormatError):
            ExactCoverInstance.from_text(text[:cut])


def test_witness_text():
    assert witness_from_text("2 0 1\n") == (0, 1, 2)
    assert witness_from_text(witness_to_text((4, 7))) == (4, 7)
    assert witness_from_text("\n") == ()
    with pytest.raises(FormatError):
        witness_from_text("1 a\n")
