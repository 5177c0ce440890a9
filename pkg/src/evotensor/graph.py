"""Boolean matrices and the directed graph attached to an evolution algebra.

The adjacency matrix is read straight off the structure matrix: there is an
arrow i -> j exactly when entry (i, j) is nonzero.  Every quantity computed
here (strong connectivity, period, component counts, polynomials) is the same
for the transposed convention.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .linalg import Matrix


@dataclass(frozen=True)
class BoolMatrix:
    bits: tuple  # n rows of n bools

    def __post_init__(self):
        bits = tuple(tuple(bool(b) for b in row) for row in self.bits)
        if any(len(r) != len(bits) for r in bits):
            raise ValueError("Boolean matrix must be square")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(tuple(tuple(i == j for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "BoolMatrix":
        return cls(tuple((False,) * n for _ in range(n)))

    @classmethod
    def ones(cls, n: int) -> "BoolMatrix":
        return cls(tuple((True,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    def __getitem__(self, idx):
        i, j = idx
        return self.bits[i][j]

    def __or__(self, other: "BoolMatrix") -> "BoolMatrix":
        _same_size(self, other)
        return BoolMatrix(tuple(tuple(a or b for a, b in zip(r, s)) for r, s in zip(self.bits, other.bits)))

    def is_all_ones(self) -> bool:
        return all(all(r) for r in self.bits)

    def to_matrix(self) -> Matrix:
        return Matrix.from_rows([[int(b) for b in r] for r in self.bits])

    def __str__(self):
        return "\n".join(" ".join("1" if b else "0" for b in r) for r in self.bits)


@dataclass(frozen=True)
class BoolDigraph:
    adjacency: BoolMatrix

    @property
    def n(self) -> int:
        return self.adjacency.n

    def successors(self, i: int) -> list[int]:
        return [j for j, b in enumerate(self.adjacency.bits[i]) if b]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.successors(i)]

    @classmethod
    def from_edges(cls, n: int, edges) -> "BoolDigraph":
        bits = [[False] * n for _ in range(n)]
        for i, j in edges:
            bits[i][j] = True
        return cls(BoolMatrix(bits))


def _same_size(a: BoolMatrix, b: BoolMatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"Boolean matrices of sizes {a.n} and {b.n}")


def support_graph(m) -> BoolDigraph:
    """Graph of an evolution algebra (or of a bare structure matrix)."""
    mat = getattr(m, "matrix", m)
    if not mat.is_square:
        raise ValueError("structure matrix must be square")
    return BoolDigraph(BoolMatrix(tuple(tuple(x != 0 for x in mat.row(i)) for i in range(mat.rows))))


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    _same_size(a, b)
    n = a.n
    cols = [tuple(b.bits[k][j] for k in range(n)) for j in range(n)]
    return BoolMatrix(tuple(tuple(any(x and y for x, y in zip(row, col)) for col in cols) for row in a.bits))


def bool_power(a: BoolMatrix, k: int) -> BoolMatrix:
    result = BoolMatrix.identity(a.n)
    for _ in range(k):
        result = bool_product(a, result)
    return result


def sigma(a: BoolMatrix, k: int) -> BoolMatrix:
    """A or A^2 or ... or A^k."""
    if k < 1:
        raise ValueError("sigma_k is defined for k >= 1")
    power = a
    acc = a
    for _ in range(k - 1):
        power = bool_product(a, power)
        acc = acc | power
    return acc


def stabilizing_index(a: BoolMatrix) -> int:
    """Least k with sigma_k(a) == sigma_{k+1}(a)."""
    power = a
    acc = a
    k = 1
    while True:
        power = bool_product(a, power)
        nxt = acc | power
        if nxt == acc:
            return k
        acc = nxt
        k += 1


def reachability(a: BoolMatrix) -> BoolMatrix:
    return sigma(a, stabilizing_index(a))


def is_strongly_connected(g: BoolDigraph) -> bool:
    return reachability(g.adjacency).is_all_ones()


def categorical_product(g1: BoolDigraph, g2: BoolDigraph) -> BoolDigraph:
    """Edge (i,j) -> (k,l) iff i -> k and j -> l; vertex (i, j) is i * n2 + j."""
    a, b = g1.adjacency.bits, g2.adjacency.bits
    n1, n2 = g1.n, g2.n
    bits = [[a[i][k] and b[j][l] for k in range(n1) for l in range(n2)]
            for i in range(n1) for j in range(n2)]
    return BoolDigraph(BoolMatrix(bits))


def _check_period_input(g: BoolDigraph) -> None:
    if not g.edges():
        raise ValueError("period undefined for a graph without edges")
    if not is_strongly_connected(g):
        raise ValueError("period is only computed for strongly connected graphs")


def period(g: BoolDigraph) -> int:
    """gcd of closed-path lengths: gcd over edges u->v of level(u) + 1 - level(v)."""
    _check_period_input(g)
    level = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in g.successors(u):
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    d = 0
    for u, v in g.edges():
        d = gcd(d, abs(level[u] + 1 - level[v]))
    return d


def period_by_powers(g: BoolDigraph) -> int:
    """gcd of the k <= n for which A^k has a true diagonal entry."""
    _check_period_input(g)
    a = g.adjacency
    power = a
    d = 0
    for k in range(1, g.n + 1):
        if any(power.bits[i][i] for i in range(g.n)):
            d = gcd(d, k)
        power = bool_product(a, power)
    return d


def weak_component_count(g: BoolDigraph) -> int:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(x) for x in range(g.n)})


def to_dot(g: BoolDigraph, labels: Sequence[str] = (), name: str = "G") -> str:
    labels = list(labels) or [str(i + 1) for i in range(g.n)]
    lines = [f"digraph {name} {{"]
    for i, lab in enumerate(labels):
        lines.append(f'  v{i} [label="{lab}"];')
    for u, v in g.edges():
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_adjacency_lists(g: BoolDigraph) -> dict:
    return {"n": g.n, "adjacency": [g.successors(i) for i in range(g.n)]}
