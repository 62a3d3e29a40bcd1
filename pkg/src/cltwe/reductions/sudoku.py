"""Sudoku (n x n with n = b*b) to Exact Cover.

Universe: 4n^2 constraints in four blocks of n^2 (cell, row-value,
column-value, box-value). Candidate ``(r, c, v)`` covers one constraint in
each block. Clues remove their own candidate, every candidate they conflict
with, and the four constraints they satisfy; the surviving constraints are
renumbered 0..U-1 so ``U = 4n^2 - 4k`` for ``k`` clues.

Values are 0-based internally. Files use 1..n and ``.`` for an empty cell.
"""

import math
from dataclasses import dataclass

from ..errors import ParseError, PuzzleError, SolutionError
from ..exact_cover import ExactCoverInstance


@dataclass(frozen=True)
class SudokuPuzzle:
    n: int
    grid: tuple   # n rows of n entries, each None or a value in [0, n)

    def __post_init__(self):
        b = math.isqrt(self.n)
        if self.n < 4 or b * b != self.n:
            raise PuzzleError(f"side length {self.n} is not a square of an integer >= 2")
        if len(self.grid) != self.n or any(len(row) != self.n for row in self.grid):
            raise PuzzleError("grid must be n x n")
        seen = set()
        for r, c, v in self.clues():
            if not 0 <= v < self.n:
                raise PuzzleError(f"clue at ({r}, {c}) out of range")
            for key in (("row", r, v), ("col", c, v), ("box", box_of(r, c, b), v)):
                if key in seen:
                    raise PuzzleError(f"clue {v + 1} at ({r}, {c}) conflicts with another clue")
                seen.add(key)

    @property
    def b(self) -> int:
        return math.isqrt(self.n)

    def clues(self):
        return [(r, c, v) for r, row in enumerate(self.grid)
                for c, v in enumerate(row) if v is not None]

    @classmethod
    def blank(cls, n: int) -> "SudokuPuzzle":
        return cls(n, tuple((None,) * n for _ in range(n)))


@dataclass(frozen=True)
class CandidateMap:
    n: int
    forward: dict        # (r, c, v) -> set index, or None when trimmed
    element_map: tuple   # original constraint index -> compact index or None
    triples: tuple       # set index -> (r, c, v)


def box_of(r: int, c: int, b: int) -> int:
    return (r // b) * b + (c // b)


def to_index(r: int, c: int, v: int, n: int) -> int:
    """Position of candidate ``(r, c, v)`` in the untrimmed candidate table."""
    return r * n * n + c * n + v


def constraints(r: int, c: int, v: int, n: int, b: int) -> tuple:
    block = n * n
    return (r * n + c,
            block + r * n + v,
            2 * block + c * n + v,
            3 * block + box_of(r, c, b) * n + v)


def sudoku_to_cover(puzzle: SudokuPuzzle):
    n, b = puzzle.n, puzzle.b
    dead_candidates = set()
    dead_constraints = set()
    for r, c, v in puzzle.clues():
        dead_constraints.update(constraints(r, c, v, n, b))
        for k in range(n):
            dead_candidates.add((r, c, k))
            dead_candidates.add((r, k, v))
            dead_candidates.add((k, c, v))
        br, bc = (r // b) * b, (c // b) * b
        for k in range(n):
            dead_candidates.add((br + k // b, bc + k % b, v))

    element_map = []
    U = 0
    for e in range(4 * n * n):
        if e in dead_constraints:
            element_map.append(None)
        else:
            element_map.append(U)
            U += 1

    forward, triples, sets = {}, [], []
    for r in range(n):
        for c in range(n):
            for v in range(n):
                t = (r, c, v)
                if t in dead_candidates:
                    forward[t] = None
                    continue
                forward[t] = len(sets)
                triples.append(t)
                sets.append([element_map[e] for e in constraints(r, c, v, n, b)])
    cmap = CandidateMap(n, forward, tuple(element_map), tuple(triples))
    return ExactCoverInstance(U, sets), cmap


def check_solution(puzzle: SudokuPuzzle, solution) -> None:
    n, b = puzzle.n, puzzle.b
    if len(solution) != n or any(len(row) != n for row in solution):
        raise SolutionError("solution grid has the wrong shape")
    full = set(range(n))
    for r, row in enumerate(solution):
        for c, v in enumerate(row):
            if v is None or not 0 <= v < n:
                raise SolutionError(f"cell ({r}, {c}) is empty or out of range")
            if puzzle.grid[r][c] is not None and puzzle.grid[r][c] != v:
                raise SolutionError(f"cell ({r}, {c}) contradicts the clue")
    for i in range(n):
        if set(solution[i]) != full:
            raise SolutionError(f"row {i} repeats a value")
        if {solution[r][i] for r in range(n)} != full:
            raise SolutionError(f"column {i} repeats a value")
        br, bc = (i // b) * b, (i % b) * b
        if {solution[br + k // b][bc + k % b] for k in range(n)} != full:
            raise SolutionError(f"box {i} repeats a value")


def sudoku_witness(puzzle: SudokuPuzzle, solution, cmap: CandidateMap) -> tuple:
    """Set indices selected by a completed grid (one per non-clue cell)."""
    check_solution(puzzle, solution)
    witness = []
    for r in range(puzzle.n):
        for c in range(puzzle.n):
            if puzzle.grid[r][c] is not None:
                continue
            idx = cmap.forward.get((r, c, solution[r][c]))
            if idx is None:
                raise SolutionError(f"cell ({r}, {c}) uses a candidate ruled out by the clues")
            witness.append(idx)
    return tuple(sorted(witness))


def cover_to_grid(puzzle: SudokuPuzzle, cmap: CandidateMap, witness) -> list:
    """Fill the puzzle from an exact cover of its reduction."""
    grid = [list(row) for row in puzzle.grid]
    for i in witness:
        r, c, v = cmap.triples[i]
        if grid[r][c] is not None:
            raise SolutionError(f"cover assigns cell ({r}, {c}) twice")
        grid[r][c] = v
    return grid


def parse_sudoku(text: str) -> SudokuPuzzle:
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise ParseError("empty sudoku file", line=1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "sudoku" or not parts[1].isdigit():
        raise ParseError("header must be 'sudoku n'", line=lineno)
    n = int(parts[1])
    b = math.isqrt(n)
    if n < 4 or b * b != n:
        raise ParseError(f"n={n} is not a perfect square >= 4", line=lineno)
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} grid rows, found {len(body)}",
                         line=body[-1][0] if body else lineno)
    grid = []
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(f"expected {n} cells", line=lineno)
        row = []
        for t in tokens:
            if t == ".":
                row.append(None)
            elif t.isdigit() and 1 <= int(t) <= n:
                row.append(int(t) - 1)
            else:
                raise ParseError(f"bad cell {t!r}", line=lineno)
        grid.append(tuple(row))
    try:
        return SudokuPuzzle(n, tuple(grid))
    except PuzzleError as exc:
        raise ParseError(str(exc), line=lineno) from None


def format_sudoku(puzzle: SudokuPuzzle) -> str:
    rows = [" ".join("." if v is None else str(v + 1) for v in row) for row in puzzle.grid]
    return f"sudoku {puzzle.n}\n" + "\n".join(rows) + "\n"


def parse_grid(text: str, n: int = None) -> list:
    """A completed grid: either a full sudoku file or n bare rows of 1..n."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if lines and lines[0][0] == "sudoku":
        lines = lines[1:]
    grid = []
    for lineno, tokens in enumerate(lines, start=1):
        try:
            grid.append([int(t) - 1 for t in tokens])
        except ValueError:
            raise ParseError("solution cells must be numbers", line=lineno) from None
    if n is not None and len(grid) != n:
        raise ParseError(f"expected {n} rows", line=len(grid))
    return grid
