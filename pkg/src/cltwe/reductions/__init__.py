from .pentomino import (LETTERS, ORIENTATIONS, PentominoBoard, Placement, format_pentomino,
                        parse_pentomino, pentomino_to_cover)
from .sudoku import (CandidateMap, SudokuPuzzle, check_solution, cover_to_grid, format_sudoku,
                     parse_grid, parse_sudoku, sudoku_to_cover, sudoku_witness, to_index)

__all__ = [
    "LETTERS", "ORIENTATIONS", "PentominoBoard", "Placement", "format_pentomino",
    "parse_pentomino", "pentomino_to_cover", "CandidateMap", "SudokuPuzzle",
    "check_solution", "cover_to_grid", "format_sudoku", "parse_grid", "parse_sudoku",
    "sudoku_to_cover", "sudoku_witness", "to_index",
]
