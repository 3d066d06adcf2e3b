"""Sparse row echelon form over a coefficient domain."""

from typing import Dict, Iterable, List

from src.algebra.fields import Domain, FieldDescriptor

Row = Dict[int, object]


class EchelonReducer:
    """Incremental echelon basis; each stored row is monic at its smallest column.

    Pivots at the smallest column mean that, when columns are ordered by
    monomial degree, the basis restricted to columns below a cutoff is an
    echelon basis of the projection onto those columns.
    """

    def __init__(self, field: Domain):
        self.field = field
        self.rows: Dict[int, Row] = {}
        self._p = field.p if isinstance(field, FieldDescriptor) and field.k == 1 else None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def pivots_below(self, column: int) -> int:
        return sum(1 for c in self.rows if c < column)

    def reduce(self, row: Row) -> Row:
        if self._p is not None:
            return self._reduce_mod_p(row)
        F = self.field
        row = {c: v for c, v in row.items() if not F.is_zero(v)}
        while row:
            col = min(row)
            pivot = self.rows.get(col)
            if pivot is None:
                return row
            factor = row[col]
            for c, v in pivot.items():
                nv = F.sub(row.get(c, F.zero), F.mul(factor, v))
                if F.is_zero(nv):
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def _reduce_mod_p(self, row: Row) -> Row:
        p = self._p
        row = {c: v % p for c, v in row.items() if v % p}
        rows = self.rows
        while row:
            col = min(row)
            pivot = rows.get(col)
            if pivot is None:
                return row
            factor = row[col]
            for c, v in pivot.items():
                nv = (row.get(c, 0) - factor * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row: Row) -> bool:
        """Insert a row; False when it was already in the span."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        col = min(reduced)
        inv = self.field.inv(reduced[col])
        F = self.field
        self.rows[col] = {c: F.mul(v, inv) for c, v in reduced.items()}
        return True


def matrix_rank(field: Domain, rows: Iterable[Row]) -> int:
    reducer = EchelonReducer(field)
    for row in rows:
        reducer.add(row)
    return reducer.rank
