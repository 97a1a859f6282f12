"""Row-echelon machinery over GF(p^gamma) coefficient vectors.

Used for conjugator recovery and centralizer computation, where the
unknowns are the d^2 entries of a matrix and constraints arrive one
generator at a time.  The reducer keeps rows in reduced row-echelon form
so callers can stop feeding constraints as soon as the rank is high
enough.
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec

__all__ = ["RowReducer", "nullspace"]


class RowReducer:
    """Incremental reduced row-echelon form over a fixed field."""

    def __init__(self, spec: FieldSpec, ncols: int):
        self.spec = spec
        self.ncols = ncols
        self.pivot_rows: dict[int, list[FieldElement]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def add_row(self, row) -> bool:
        """Reduce a row into the basis; True if it added rank."""
        row = list(row)
        for col in sorted(self.pivot_rows):
            if row[col]:
                f = row[col]
                prow = self.pivot_rows[col]
                for k in range(col, self.ncols):
                    if prow[k]:
                        row[k] = row[k] - f * prow[k]
        lead = None
        for k, v in enumerate(row):
            if v:
                lead = k
                break
        if lead is None:
            return False
        linv = row[lead].inv()
        row = [v * linv if v else v for v in row]
        for col, prow in self.pivot_rows.items():
            if prow[lead]:
                f = prow[lead]
                for k in range(lead, self.ncols):
                    if row[k]:
                        prow[k] = prow[k] - f * row[k]
        self.pivot_rows[lead] = row
        return True

    def nullspace_basis(self) -> list[tuple[FieldElement, ...]]:
        """Basis vectors of the solution space of (rows) * v = 0."""
        zero, one = self.spec.zero(), self.spec.one()
        pivots = set(self.pivot_rows)
        free_cols = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free_cols:
            vec = [zero] * self.ncols
            vec[f] = one
            for col, prow in self.pivot_rows.items():
                if prow[f]:
                    vec[col] = -prow[f]
            basis.append(tuple(vec))
        return basis


def nullspace(spec: FieldSpec, rows, ncols: int) -> list[tuple[FieldElement, ...]]:
    red = RowReducer(spec, ncols)
    for row in rows:
        red.add_row(row)
    return red.nullspace_basis()
