"""Small exact matrices and sparse row reduction over Q(i)."""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, Mapping, Optional, Sequence, Tuple

from .scalars import Scalar

Matrix = Tuple[Tuple[Scalar, ...], ...]


def zeros(n: int, m: Optional[int] = None) -> Matrix:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0) for col in cols) for row in a)


def mat_add(a: Matrix, b: Matrix, sb: Scalar = 1) -> Matrix:
    return tuple(tuple(x + sb * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: Scalar) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def mat_vec(a: Matrix, v: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), 0) for row in a)


class EchelonBasis:
    """Incrementally maintained reduced basis of sparse vectors {coordinate: value}.

    Coordinates may be any hashable, orderable keys.
    """

    def __init__(self):
        self.rows: Dict[Hashable, Dict[Hashable, Scalar]] = {}  # pivot -> row (pivot entry 1)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping[Hashable, Scalar]) -> Dict[Hashable, Scalar]:
        w = {k: c for k, c in v.items() if c}
        # rows carry no foreign pivot columns, so one pass suffices
        for p in [k for k in w if k in self.rows]:
            c = w.get(p)
            if not c:
                continue
            for kk, rv in self.rows[p].items():
                nv = w.get(kk, 0) - c * rv
                if nv:
                    w[kk] = nv
                else:
                    w.pop(kk, None)
        return w

    def add(self, v: Mapping[Hashable, Scalar]) -> bool:
        """Insert v; return True when it enlarged the span."""
        w = self.reduce(v)
        if not w:
            return False
        piv = min(w)
        c = w[piv]
        w = {k: x / c for k, x in w.items()}
        # keep rows fully reduced in the new pivot column
        for p, row in self.rows.items():
            a = row.get(piv)
            if a:
                for kk, x in w.items():
                    nv = row.get(kk, 0) - a * x
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
        self.rows[piv] = w
        return True


def rank(vectors: Iterable[Mapping[Hashable, Scalar]]) -> int:
    """Exact rank of a family of sparse vectors."""
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def matrix_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return rank({j: x for j, x in enumerate(r) if x} for r in rows)
