"""Finite-dimensional algebras given by structure constants.

``constants[i][j][k]`` is the coefficient of e_k in the product e_i * e_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Matrix, format_rational, rank, to_rational


@dataclass(frozen=True)
class AlgebraStructure:
    dim: int
    constants: tuple  # dim x dim x dim nested tuples of Fraction
    labels: tuple = ()

    def __post_init__(self):
        c = tuple(tuple(tuple(to_rational(x) for x in cell) for cell in row) for row in self.constants)
        if len(c) != self.dim or any(len(r) != self.dim or any(len(v) != self.dim for v in r) for r in c):
            raise ValueError(f"structure constants must have shape {self.dim}x{self.dim}x{self.dim}")
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(self.dim))
        if len(labels) != self.dim:
            raise ValueError("one label per basis vector")
        object.__setattr__(self, "constants", c)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_products(cls, dim: int, products: dict, labels: Sequence[str] = ()) -> "AlgebraStructure":
        """Build from a sparse table {(i, j): {k: coeff}}; unspecified products are zero."""
        c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in products.items():
            for k, v in vec.items():
                c[i][j][k] = v
        return cls(dim, c, tuple(labels))

    @classmethod
    def from_evolution_matrix(cls, m: Matrix, labels: Sequence[str] = ()) -> "AlgebraStructure":
        """e_i * e_i = sum_k m[k, i] e_k, all other basic products zero."""
        n = m.rows
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            c[i][i] = list(m.col(i))
        return cls(n, c, tuple(labels))

    def product(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.constants[i][j]

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "constants": [[[format_rational(x) for x in v] for v in r] for r in self.constants],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraStructure":
        return cls(int(data["dim"]), data["constants"], tuple(data.get("labels", ())))


def multiply(a: AlgebraStructure, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    if len(x) != a.dim or len(y) != a.dim:
        raise ValueError(f"vectors must have length {a.dim}")
    out = [Fraction(0)] * a.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            w = xi * yj
            for k, c in enumerate(a.constants[i][j]):
                if c:
                    out[k] += w * c
    return tuple(out)


def tensor_algebra(a1: AlgebraStructure, a2: AlgebraStructure) -> AlgebraStructure:
    """(e_i (x) f_j)(e_k (x) f_r) = e_i e_k (x) f_j f_r, basis (i, j) -> i * dim(a2) + j."""
    n, m = a1.dim, a2.dim
    dim = n * m
    c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for k in range(n):
            left = a1.constants[i][k]
            if not any(left):
                continue
            for j in range(m):
                for r in range(m):
                    right = a2.constants[j][r]
                    if not any(right):
                        continue
                    cell = c[i * m + j][k * m + r]
                    for s, ls in enumerate(left):
                        if ls:
                            for t, rt in enumerate(right):
                                if rt:
                                    cell[s * m + t] = ls * rt
    labels = tuple(f"{x}⊗{y}" for x in a1.labels for y in a2.labels)
    return AlgebraStructure(dim, c, labels)


def is_commutative(a: AlgebraStructure) -> bool:
    return all(a.constants[i][j] == a.constants[j][i] for i in range(a.dim) for j in range(i + 1, a.dim))


def is_anticommutative(a: AlgebraStructure) -> bool:
    return all(a.constants[i][j] == tuple(-x for x in a.constants[j][i])
               for i in range(a.dim) for j in range(i, a.dim))


def is_zero_square(a: AlgebraStructure) -> bool:
    # polarization: x^2 = 0 for all x iff e_i^2 = 0 and e_i e_j + e_j e_i = 0
    for i in range(a.dim):
        if any(a.constants[i][i]):
            return False
        for j in range(i + 1, a.dim):
            if any(p + q for p, q in zip(a.constants[i][j], a.constants[j][i])):
                return False
    return True


def square_dim(a: AlgebraStructure) -> int:
    """dim of A^2 = span of all basic products."""
    products = [a.constants[i][j] for i in range(a.dim) for j in range(a.dim)]
    if not products:
        return 0
    return rank(Matrix.from_rows(products))


def is_perfect(a: AlgebraStructure) -> bool:
    return square_dim(a) == a.dim


def is_natural_basis(a: AlgebraStructure, candidate: Sequence[Sequence]) -> bool:
    if len(candidate) != a.dim:
        raise ValueError(f"a basis of this algebra has {a.dim} vectors, got {len(candidate)}")
    vecs = [tuple(to_rational(x) for x in v) for v in candidate]
    if rank(Matrix.from_rows(vecs)) != a.dim:
        return False
    for i in range(a.dim):
        for j in range(a.dim):
            if i != j and any(multiply(a, vecs[i], vecs[j])):
                return False
    return True


def change_basis(a: AlgebraStructure, p: Matrix) -> AlgebraStructure:
    """Re-express the product in the basis whose j-th vector is column j of ``p``."""
    if p.shape != (a.dim, a.dim):
        raise ValueError(f"basis change must be {a.dim}x{a.dim}")
    try:
        p_inv = p.inverse()
    except ZeroDivisionError:
        raise ValueError("basis change matrix is singular") from None
    cols = [p.col(j) for j in range(a.dim)]
    c = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            prod = multiply(a, cols[i], cols[j])
            row.append(tuple(sum((p_inv[k, s] * prod[s] for s in range(a.dim)), Fraction(0))
                             for k in range(a.dim)))
        c.append(row)
    return AlgebraStructure(a.dim, c)


def is_evolution_structure(a: AlgebraStructure) -> bool:
    """True when the defining basis is already natural."""
    return all(not any(a.constants[i][j]) for i in range(a.dim) for j in range(a.dim) if i != j)
