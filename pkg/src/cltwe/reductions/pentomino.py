"""Pentomino tiling to Exact Cover.

Elements are the coverable cells (labelled 0.. in row-major order) followed
by one element per piece instance. Each placement of a piece instance gives
a six-element set: its five cells plus the instance label.

Pieces use the Conway letters O P Q R S T U V W X Y Z (O is the straight
piece, Q the L, R the F, S the N). Pieces are two-sided: reflections count as
orientations.
"""

import logging
from dataclasses import dataclass

from ..errors import ParseError
from ..exact_cover import ExactCoverInstance

log = logging.getLogger(__name__)

LETTERS = "OPQRSTUVWXYZ"

_SHAPES = {
    "O": ["#####"],
    "P": ["##", "##", "#."],
    "Q": ["####", "#..."],
    "R": [".##", "##.", ".#."],
    "S": ["##..", ".###"],
    "T": ["###", ".#.", ".#."],
    "U": ["#.#", "###"],
    "V": ["#..", "#..", "###"],
    "W": ["#..", "##.", ".##"],
    "X": [".#.", "###", ".#."],
    "Y": [".#..", "####"],
    "Z": ["##.", ".#.", ".##"],
}


def _normalize(cells):
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return tuple(sorted((r - r0, c - c0) for r, c in cells))


def _orientations(rows):
    cells = [(r, c) for r, line in enumerate(rows) for c, ch in enumerate(line) if ch == "#"]
    seen = []
    for flip in (False, True):
        shape = [(r, -c) for r, c in cells] if flip else list(cells)
        for _ in range(4):
            norm = _normalize(shape)
            if norm not in seen:
                seen.append(norm)
            shape = [(c, -r) for r, c in shape]
    return tuple(seen)


ORIENTATIONS = {letter: _orientations(rows) for letter, rows in _SHAPES.items()}


@dataclass(frozen=True)
class PentominoBoard:
    rows: int
    cols: int
    cells: tuple     # rows x cols of 0/1; 1 must be covered
    pieces: dict     # letter -> count

    def __post_init__(self):
        if len(self.cells) != self.rows or any(len(r) != self.cols for r in self.cells):
            raise ValueError("cell grid does not match the board size")
        object.__setattr__(self, "pieces", {k: v for k, v in self.pieces.items() if v})
        unknown = set(self.pieces) - set(LETTERS)
        if unknown:
            raise ValueError(f"unknown pentomino letters {sorted(unknown)}")
        if not self.balanced:
            log.warning("board has %d cells but pieces cover %d",
                        self.cell_count, 5 * self.piece_count)

    @property
    def cell_count(self) -> int:
        return sum(map(sum, self.cells))

    @property
    def piece_count(self) -> int:
        return sum(self.pieces.values())

    @property
    def balanced(self) -> bool:
        return self.cell_count == 5 * self.piece_count


@dataclass(frozen=True)
class Placement:
    letter: str
    instance: int        # running piece-instance number
    cells: tuple         # (row, col) coordinates


def placements_for_piece(board: PentominoBoard, letter: str) -> list:
    """Every on-board position of every orientation of one piece."""
    out = []
    for shape in ORIENTATIONS[letter]:
        h = 1 + max(r for r, _ in shape)
        w = 1 + max(c for _, c in shape)
        for r in range(board.rows - h + 1):
            for c in range(board.cols - w + 1):
                cells = tuple((r + dr, c + dc) for dr, dc in shape)
                if all(board.cells[y][x] for y, x in cells):
                    out.append(cells)
    return out


def pentomino_to_cover(board: PentominoBoard):
    labels = {}
    for r, row in enumerate(board.cells):
        for c, v in enumerate(row):
            if v:
                labels[(r, c)] = len(labels)
    ncells = len(labels)
    sets, placements = [], []
    ctr = 0
    for letter in LETTERS:
        count = board.pieces.get(letter, 0)
        if not count:
            continue
        template = placements_for_piece(board, letter)
        for _ in range(count):
            for cells in template:
                sets.append(sorted(labels[x] for x in cells) + [ncells + ctr])
                placements.append(Placement(letter, ctr, cells))
            ctr += 1
    return ExactCoverInstance(ncells + ctr, sets), placements


def parse_pentomino(text: str) -> PentominoBoard:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise ParseError("empty pentomino file", line=1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "pentomino" or not (parts[1].isdigit() and parts[2].isdigit()):
        raise ParseError("header must be 'pentomino rows cols'", line=lineno)
    rows, cols = int(parts[1]), int(parts[2])
    if rows < 1 or cols < 1:
        raise ParseError("board dimensions must be positive", line=lineno)
    if len(lines) != rows + 2:
        raise ParseError(f"expected {rows} grid rows and a pieces line",
                         line=lines[-1][0])
    grid = []
    for lineno, line in lines[1:rows + 1]:
        if len(line) != cols or set(line) - {"#", "."}:
            raise ParseError(f"grid row must be {cols} characters of '#' or '.'", line=lineno)
        grid.append(tuple(int(ch == "#") for ch in line))
    lineno, line = lines[-1]
    tokens = line.split()
    if not tokens or tokens[0] != "pieces":
        raise ParseError("last line must start with 'pieces'", line=lineno)
    pieces = {}
    for tok in tokens[1:]:
        letter, sep, count = tok.partition(":")
        if not sep or letter not in LETTERS:
            raise ParseError(f"unknown piece {tok!r}", line=lineno)
        if not count.isdigit():
            raise ParseError(f"bad count in {tok!r}", line=lineno)
        if letter in pieces:
            raise ParseError(f"piece {letter} listed twice", line=lineno)
        pieces[letter] = int(count)
    return PentominoBoard(rows, cols, tuple(grid), pieces)


def format_pentomino(board: PentominoBoard) -> str:
    out = [f"pentomino {board.rows} {board.cols}"]
    out += ["".join("#" if v else "." for v in row) for row in board.cells]
    listed = [f"{k}:{board.pieces[k]}" for k in LETTERS if board.pieces.get(k)]
    out.append(" ".join(["pieces"] + listed))
    return "\n".join(out) + "\n"
