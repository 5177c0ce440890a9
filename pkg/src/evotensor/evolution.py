"""Evolution algebras described by their structure matrix.

Column i of the structure matrix holds the coordinates of e_i^2, i.e.
e_i^2 = sum_k M[k, i] e_k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import graph
from .linalg import (Matrix, Permutation, det, format_rational, hadamard_square, kron,
                     monomial_matrix, to_rational)


class NotPerfectError(ValueError):
    """Raised when an operation is only defined for perfect evolution algebras."""


@dataclass(frozen=True)
class EvolutionAlgebra:
    matrix: Matrix
    labels: tuple = ()

    def __post_init__(self):
        if not self.matrix.is_square:
            raise ValueError(f"structure matrix must be square, got {self.matrix.rows}x{self.matrix.cols}")
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(self.matrix.rows))
        if len(labels) != self.matrix.rows:
            raise ValueError("one label per basis vector")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_rows(cls, rows, labels: Sequence[str] = ()) -> "EvolutionAlgebra":
        return cls(Matrix.from_rows(rows), tuple(labels))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def square_of(self, i: int) -> tuple[Fraction, ...]:
        return self.matrix.col(i)

    def to_json(self) -> dict:
        return {"matrix": [[format_rational(x) for x in r] for r in self.matrix.to_rows()],
                "labels": list(self.labels)}

    @classmethod
    def from_json(cls, data) -> "EvolutionAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(Matrix.from_rows(data["matrix"]), tuple(data.get("labels") or ()))


def tensor_evolution(e1: EvolutionAlgebra, e2: EvolutionAlgebra) -> EvolutionAlgebra:
    labels = tuple(f"{a}⊗{b}" for a in e1.labels for b in e2.labels)
    return EvolutionAlgebra(kron(e1.matrix, e2.matrix), labels)


def is_perfect(e: EvolutionAlgebra) -> bool:
    return det(e.matrix) != 0


def is_nondegenerate(e: EvolutionAlgebra) -> bool:
    return not annihilator(e)


def annihilator(e: EvolutionAlgebra) -> frozenset[int]:
    """Indices of basis vectors with zero square; they span ann(A)."""
    return frozenset(i for i in range(e.dim) if not any(e.matrix.col(i)))


def natural_basis_change(e: EvolutionAlgebra, sigma: Permutation, scales: Sequence = None) -> EvolutionAlgebra:
    """Structure matrix in the basis f_j = scales[j] * e_{sigma(j)}.

    Computes Q^-1 M Q^(2) with Q = M_sigma diag(scales); for a perfect algebra
    these monomial changes are all the natural bases there are.
    """
    if scales is None:
        scales = [1] * e.dim
    if len(sigma) != e.dim:
        raise ValueError(f"permutation acts on {len(sigma)} points, algebra has dimension {e.dim}")
    if not is_perfect(e):
        raise NotPerfectError("natural bases are monomial changes only for perfect evolution algebras")
    q = monomial_matrix(sigma, scales)
    new = q.inverse() @ e.matrix @ hadamard_square(q)
    labels = tuple(e.labels[sigma(j)] for j in range(e.dim))
    return EvolutionAlgebra(new, labels)


def combine_monomial(sigma1: Permutation, scales1: Sequence, sigma2: Permutation,
                     scales2: Sequence) -> tuple[Permutation, list[Fraction]]:
    """Monomial data whose matrix is the Kronecker product of the two given ones."""
    m = len(sigma2)
    sigma = Permutation(sigma1(i) * m + sigma2(j) for i in range(len(sigma1)) for j in range(m))
    scales = [to_rational(a) * to_rational(b) for a in scales1 for b in scales2]
    return sigma, scales


def associated_graph(e: EvolutionAlgebra) -> graph.BoolDigraph:
    return graph.support_graph(e.matrix)


def is_simple(e: EvolutionAlgebra) -> bool:
    """Simplicity of a perfect evolution algebra: its graph is strongly connected."""
    if not is_perfect(e):
        raise NotPerfectError("criterion inapplicable: the graph test for simplicity needs a perfect algebra")
    return graph.is_strongly_connected(associated_graph(e))


def as_algebra_structure(e: EvolutionAlgebra):
    from .algebra import AlgebraStructure

    return AlgebraStructure.from_evolution_matrix(e.matrix, e.labels)
