"""Grid verification and the chain form of 3x3 magic squares.

Every 3x3 grid whose eight lines (rows, columns, both diagonals) share one
sum is an affine walk from the middle-right cell: starting at x23 and
stepping by (d1, d1, d2, d1, d1, d2, d1, d1) visits

    x23 -> x31 -> x12 -> x11 -> x22 -> x33 -> x32 -> x13 -> x21,

so the triple (x23, d1, d2) encodes the grid exactly, with constant
K = 3*x22.  When the cells are all perfect squares, the three (d1, d1) runs
are three equal-sum AP pairs and the two d2 steps are gap progressions
between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from pathlib import Path

from .ap_core import (
    APPair,
    LayoutError,
    OddAP,
    classify_layout,
    is_perfect_square,
    pair_from_roots,
    sum_of_ap,
)

__all__ = [
    "Grid",
    "VerifyReport",
    "ChainDecomposition",
    "APStructure",
    "GridFormatError",
    "ChainViolationError",
    "NotMagicError",
    "NegativeCellError",
    "NotAllSquaresError",
    "parse_grid",
    "load_grid",
    "rotate180",
    "verify",
    "chain_decompose",
    "generate_from_chain",
    "to_ap_structure",
]


class GridFormatError(ValueError):
    """Malformed grid file or text."""


class ChainViolationError(ValueError):
    """A chain relation fails on the grid (it is not fully magic)."""


class NotMagicError(ValueError):
    """Chain relations hold but the grid has repeated entries."""


class NegativeCellError(ValueError):
    """A chain walk produced a negative cell."""


class NotAllSquaresError(ValueError):
    """Grid cells are not all perfect squares."""


@dataclass(frozen=True)
class Grid:
    """n x n grid of nonnegative integers, row-major."""

    order: int
    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 3:
            raise ValueError(f"order must be >= 3, got {self.order}")
        if len(self.cells) != self.order * self.order:
            raise ValueError(
                f"expected {self.order * self.order} cells, got {len(self.cells)}"
            )
        if any(c < 0 for c in self.cells):
            raise ValueError("cells must be nonnegative")

    @classmethod
    def from_rows(cls, rows) -> "Grid":
        rows = [tuple(r) for r in rows]
        return cls(len(rows), tuple(v for row in rows for v in row))

    def cell(self, row: int, col: int) -> int:
        return self.cells[row * self.order + col]

    def rows(self) -> list[tuple[int, ...]]:
        n = self.order
        return [self.cells[i * n : (i + 1) * n] for i in range(n)]


def parse_grid(text: str, roots: bool = False) -> Grid:
    """Parse 'n then n*n integers' whitespace-separated; square values if roots."""
    try:
        tokens = [int(t) for t in text.split()]
    except ValueError as exc:
        raise GridFormatError(f"non-integer token in grid: {exc}") from exc
    if not tokens:
        raise GridFormatError("empty grid text")
    n, values = tokens[0], tokens[1:]
    if n < 3:
        raise GridFormatError(f"grid order must be >= 3, got {n}")
    if len(values) != n * n:
        raise GridFormatError(f"expected {n * n} cells for order {n}, got {len(values)}")
    if any(v < 0 for v in values):
        raise GridFormatError("grid cells must be nonnegative")
    if roots:
        values = [v * v for v in values]
    return Grid(n, tuple(values))


def load_grid(path: str | Path, roots: bool = False) -> Grid:
    return parse_grid(Path(path).read_text(), roots=roots)


def rotate180(grid: Grid) -> Grid:
    return Grid(grid.order, tuple(reversed(grid.cells)))


@dataclass(frozen=True)
class VerifyReport:
    """All line sums plus the derived classification.

    classification is ``magic`` (one constant over all lines and distinct
    entries), ``semi-magic`` (rows and columns uniform, but repeated entries
    or more than one constant among all lines), else ``not-magic``.  Raw sums
    are carried so callers can apply other conventions.
    """

    order: int
    row_sums: tuple[int, ...]
    col_sums: tuple[int, ...]
    diag_sums: tuple[int, int]
    constants: tuple[int, ...]
    distinct: bool
    all_square: bool
    repeated_values: tuple[int, ...]
    classification: str

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "classification": self.classification,
            "constants": list(self.constants),
            "row_sums": list(self.row_sums),
            "col_sums": list(self.col_sums),
            "diag_sums": list(self.diag_sums),
            "distinct": self.distinct,
            "all_square": self.all_square,
            "repeated_values": list(self.repeated_values),
        }


def verify(grid: Grid) -> VerifyReport:
    """Compute every line sum and classify the grid."""
    n = grid.order
    rows = tuple(sum(grid.cell(i, j) for j in range(n)) for i in range(n))
    cols = tuple(sum(grid.cell(i, j) for i in range(n)) for j in range(n))
    main = sum(grid.cell(i, i) for i in range(n))
    minor = sum(grid.cell(i, n - 1 - i) for i in range(n))
    constants = tuple(sorted(set(rows) | set(cols) | {main, minor}))
    counts: dict[int, int] = {}
    for v in grid.cells:
        counts[v] = counts.get(v, 0) + 1
    repeated = tuple(sorted(v for v, k in counts.items() if k > 1))
    distinct = not repeated
    all_square = all(is_perfect_square(v) for v in grid.cells)
    if len(constants) == 1 and distinct:
        classification = "magic"
    elif len(set(rows) | set(cols)) == 1:
        classification = "semi-magic"
    else:
        classification = "not-magic"
    return VerifyReport(
        order=n,
        row_sums=rows,
        col_sums=cols,
        diag_sums=(main, minor),
        constants=constants,
        distinct=distinct,
        all_square=all_square,
        repeated_values=repeated,
        classification=classification,
    )


# Chain positions in walk order: x23, x31, x12, x11, x22, x33, x32, x13, x21.
_CHAIN_POSITIONS = ((1, 2), (2, 0), (0, 1), (0, 0), (1, 1), (2, 2), (2, 1), (0, 2), (1, 0))
_CHAIN_NAMES = ("x23", "x31", "x12", "x11", "x22", "x33", "x32", "x13", "x21")


@dataclass(frozen=True)
class ChainDecomposition:
    """(x23, d1, d2) chain encoding of a fully magic 3x3 grid."""

    x23: int
    d1: int
    d2: int

    @property
    def canonical(self) -> bool:
        """True when d1 > 0 (the orientation the layout arguments assume)."""
        return self.d1 > 0

    @property
    def center(self) -> int:
        return self.x23 + 3 * self.d1 + self.d2

    @property
    def constant(self) -> int:
        return 3 * self.center

    def to_dict(self) -> dict:
        return {
            "x23": self.x23,
            "d1": self.d1,
            "d2": self.d2,
            "k": self.constant,
            "canonical": self.canonical,
        }


def _chain_values(x23: int, d1: int, d2: int) -> list[int]:
    steps = (d1, d1, d2, d1, d1, d2, d1, d1)
    values = [x23]
    for step in steps:
        values.append(values[-1] + step)
    return values


def generate_from_chain(x23: int, d1: int, d2: int) -> Grid:
    """Walk the chain into a 3x3 grid; every line sums to 3*(x23 + 3*d1 + d2).

    Distinctness is NOT guaranteed.  Raises NegativeCellError when the walk
    leaves the nonnegative integers.
    """
    values = _chain_values(x23, d1, d2)
    bad = [(_CHAIN_NAMES[i], v) for i, v in enumerate(values) if v < 0]
    if bad:
        name, v = bad[0]
        raise NegativeCellError(f"negative cell {name} = {v}")
    cells = [0] * 9
    for (row, col), v in zip(_CHAIN_POSITIONS, values):
        cells[row * 3 + col] = v
    return Grid(3, tuple(cells))


def chain_decompose(grid: Grid, require_distinct: bool = True) -> ChainDecomposition:
    """Read (x23, d1, d2) off the grid and check all eight chain relations.

    Raises ChainViolationError naming the first failing relation (the grid is
    then not fully magic), or NotMagicError when the relations hold but the
    entries repeat (suppress with require_distinct=False).
    """
    if grid.order != 3:
        raise ValueError(f"chain decomposition is defined for order 3, got {grid.order}")
    actual = [grid.cell(r, c) for r, c in _CHAIN_POSITIONS]
    x23 = actual[0]
    d1 = actual[1] - actual[0]
    d2 = actual[3] - actual[2]
    expected = _chain_values(x23, d1, d2)
    steps = ("d1", "d1", "d2", "d1", "d1", "d2", "d1", "d1")
    for i in range(1, 9):
        if actual[i] != expected[i]:
            raise ChainViolationError(
                f"chain violation: {_CHAIN_NAMES[i]} = {actual[i]}, expected "
                f"{_CHAIN_NAMES[i - 1]} + {steps[i - 1]} = {expected[i]}"
            )
    if require_distinct and len(set(grid.cells)) != 9:
        raise NotMagicError("not magic: repeated entries")
    return ChainDecomposition(x23, d1, d2)


@dataclass(frozen=True)
class APStructure:
    """AP view of an all-square fully magic grid (after orienting d1 > 0).

    ``pairs`` are the three equal-sum AP pairs read off the chain runs; the
    gap progressions carry sum |d2| and are the reversed ("primed") variants
    when d2 < 0, which is exactly the overlapping/reversed layout case.
    """

    pairs: tuple[APPair, APPair, APPair]
    gap_x: OddAP
    gap_y: OddAP
    gaps_primed: bool
    d1: int
    d2: int
    layout: str  # "a" | "b" | "c" | "unclassifiable"
    distinct: bool
    rotated: bool


def to_ap_structure(grid: Grid) -> APStructure:
    """Decompose an all-square chain grid into pairs and gap progressions.

    Raises NotAllSquaresError, ChainViolationError, or ValueError for a
    degenerate (d1 == 0) chain.  Repeated entries are flagged, not fatal.
    """
    if grid.order != 3:
        raise ValueError(f"AP structure is defined for order 3, got {grid.order}")
    if not all(is_perfect_square(v) for v in grid.cells):
        raise NotAllSquaresError("not all squares")
    rotated = False
    work = grid
    if work.cell(2, 0) < work.cell(1, 2):  # d1 < 0: flip orientation
        work = rotate180(work)
        rotated = True
    dec = chain_decompose(work, require_distinct=False)
    if dec.d1 == 0:
        raise ValueError("degenerate chain: d1 = 0")
    roots = [isqrt(work.cell(r, c)) for r, c in _CHAIN_POSITIONS]
    pairs = (
        pair_from_roots(roots[0], roots[1], roots[2]),
        pair_from_roots(roots[3], roots[4], roots[5]),
        pair_from_roots(roots[6], roots[7], roots[8]),
    )
    if dec.d2 >= 0:
        gaps_primed = False
        gap_x = OddAP(2 * roots[2], roots[3] - roots[2])
        gap_y = OddAP(2 * roots[5], roots[6] - roots[5])
    else:
        gaps_primed = True
        gap_x = OddAP(2 * roots[3], roots[2] - roots[3])
        gap_y = OddAP(2 * roots[6], roots[5] - roots[6])
    assert sum_of_ap(gap_x) == abs(dec.d2) and sum_of_ap(gap_y) == abs(dec.d2)
    try:
        layout = classify_layout(*pairs)
    except LayoutError:
        layout = "unclassifiable"
    return APStructure(
        pairs=pairs,
        gap_x=gap_x,
        gap_y=gap_y,
        gaps_primed=gaps_primed,
        d1=dec.d1,
        d2=dec.d2,
        layout=layout,
        distinct=len(set(work.cells)) == 9,
        rotated=rotated,
    )
