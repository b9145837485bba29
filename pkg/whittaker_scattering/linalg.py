"""Exact dense matrices over Q(zeta_N)."""

from typing import List, Optional, Sequence, Tuple

from .cyclo import CycloNum
from .exceptions import DimensionMismatchError, IncompatibleModulusError


class Matrix:
    """rows x cols matrix of CycloNum, stored row-major, all sharing one modulus."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[CycloNum]):
        if rows < 1 or cols < 1:
            raise DimensionMismatchError(f"matrix shape must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise DimensionMismatchError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        if len({e.modulus for e in entries}) != 1:
            raise IncompatibleModulusError("matrix entries live in different cyclotomic fields")
        self.rows = rows
        self.cols = cols
        self.entries: Tuple[CycloNum, ...] = tuple(entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[CycloNum]]) -> "Matrix":
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise DimensionMismatchError("ragged rows")
        return cls(len(rows), widths.pop(), [e for r in rows for e in r])

    @property
    def modulus(self) -> int:
        return self.entries[0].modulus

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> CycloNum:
        i, j = index
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[List[CycloNum]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __add__(self, other: "Matrix") -> "Matrix":
        return mat_add(self, other)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return mat_add(self, scalar_mul(-1, other))

    def __mul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, N={self.modulus})"


def identity(n: int, modulus: int) -> Matrix:
    zero, one = CycloNum.zero(modulus), CycloNum.one(modulus)
    return Matrix(n, n, [one if i == j else zero for i in range(n) for j in range(n)])


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    if A.shape != B.shape:
        raise DimensionMismatchError(f"cannot add {A.rows}x{A.cols} and {B.rows}x{B.cols}")
    return Matrix(A.rows, A.cols, [a + b for a, b in zip(A.entries, B.entries)])


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A.cols != B.rows:
        raise DimensionMismatchError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    entries = []
    for i in range(A.rows):
        for j in range(B.cols):
            total = CycloNum.zero(A.modulus)
            for k in range(A.cols):
                total = total + A[i, k] * B[k, j]
            entries.append(total)
    return Matrix(A.rows, B.cols, entries)


def scalar_mul(c, A: Matrix) -> Matrix:
    """c * A for c a CycloNum or an exact rational."""
    return Matrix(A.rows, A.cols, [c * a for a in A.entries])


def trace(A: Matrix) -> CycloNum:
    if A.rows != A.cols:
        raise DimensionMismatchError(f"trace of a non-square {A.rows}x{A.cols} matrix")
    total = CycloNum.zero(A.modulus)
    for i in range(A.rows):
        total = total + A[i, i]
    return total


def rank(A: Matrix) -> int:
    """Gaussian elimination, pivoting on the first nonzero entry of each column."""
    rows = A.to_rows()
    rank_so_far = 0
    for col in range(A.cols):
        pivot = next((r for r in range(rank_so_far, A.rows) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank_so_far], rows[pivot] = rows[pivot], rows[rank_so_far]
        pivot_inv = rows[rank_so_far][col].inv()
        for r in range(rank_so_far + 1, A.rows):
            if rows[r][col].is_zero():
                continue
            factor = rows[r][col] * pivot_inv
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank_so_far])]
        rank_so_far += 1
        if rank_so_far == A.rows:
            break
    return rank_so_far


def is_scalar(A: Matrix) -> Optional[CycloNum]:
    """lambda if A = lambda * I exactly, else None."""
    if A.rows != A.cols:
        raise DimensionMismatchError(f"{A.rows}x{A.cols} is not square")
    candidate = A[0, 0]
    for i in range(A.rows):
        for j in range(A.cols):
            expected = candidate if i == j else 0
            if A[i, j] != expected:
                return None
    return candidate
