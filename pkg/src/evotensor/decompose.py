"""Zero-count invariants, Kronecker screening, extended matrices and orbit search."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .evolution import EvolutionAlgebra, NotPerfectError, is_perfect, natural_basis_change
from .linalg import Matrix, Permutation, rank, kron

# Possible (z_d(A), z_d(B)) -> z_d(A (x) B) for 2x2 factors with z(A) = x, z(B) = y.
# Keys are (x, y) with x <= y; values map (x', y') to k.
ZERO_TABLE_2X2 = {
    (0, 0): {(0, 0): 0},
    (0, 1): {(0, 0): 0, (0, 1): 2},
    (1, 1): {(0, 0): 0, (0, 1): 2, (1, 1): 3},
    (0, 2): {(0, 0): 0, (0, 1): 2, (0, 2): 4},
    (1, 2): {(0, 0): 0, (0, 1): 2, (1, 1): 3, (0, 2): 4, (1, 2): 4},
    (0, 3): {(0, 1): 2, (0, 2): 4},
    (2, 2): {(0, 0): 0, (0, 1): 2, (1, 1): 3, (0, 2): 4, (1, 2): 4, (2, 2): 4},
    (1, 3): {(0, 1): 2, (1, 1): 3, (0, 2): 4, (1, 2): 4},
    (2, 3): {(0, 1): 2, (1, 1): 3, (0, 2): 4, (1, 2): 4, (2, 2): 4},
    (3, 3): {(1, 1): 3, (1, 2): 4, (2, 2): 4},
}


def _alpha(x: int, y: int) -> int:
    return 4 * x + (4 - x) * y


# (z, z_d) pairs a Kronecker product of two nonzero 2x2 matrices can have
KRON_2X2_PAIRS = frozenset((_alpha(x, y), k) for (x, y), rows in ZERO_TABLE_2X2.items() for k in rows.values())

FORBIDDEN_Z_4X4 = frozenset({1, 2, 3, 5, 6, 9, 11})


@dataclass(frozen=True)
class ZeroProfile:
    z: int
    z_d: int
    z_c: int
    z_r: int
    rank: int

    def as_dict(self) -> dict:
        return {"z": self.z, "z_d": self.z_d, "z_c": self.z_c, "z_r": self.z_r, "rank": self.rank}


@dataclass(frozen=True)
class DecompositionWitness:
    """Basis change (sigma, scales) after which the matrix equals kron(left, right).

    ``left`` is the k x k block-grid factor and ``right`` the n x n block.
    """

    sigma: Permutation
    scales: tuple
    left: Matrix
    right: Matrix
    transformed: Matrix = field(compare=False, default=None)

    def product(self) -> Matrix:
        return kron(self.left, self.right)


def zero_profile(m: Matrix) -> ZeroProfile:
    if not m.is_square:
        raise ValueError("zero profile needs a square matrix")
    n = m.rows
    return ZeroProfile(
        z=sum(1 for x in m.entries if x == 0),
        z_d=sum(1 for i in range(n) if m[i, i] == 0),
        z_c=sum(1 for j in range(n) if not any(m.col(j))),
        z_r=sum(1 for i in range(n) if not any(m.row(i))),
        rank=rank(m),
    )


def _check_profile(p: ZeroProfile, n: int) -> None:
    ok = (0 <= p.z <= n * n and 0 <= p.z_d <= n and 0 <= p.z_c <= n and 0 <= p.z_r <= n
          and p.z >= n * p.z_c and p.z >= n * p.z_r and 0 <= p.rank <= n - p.z_c and p.rank <= n - p.z_r)
    if not ok:
        raise ValueError(f"profile {p} is inconsistent with a {n}x{n} matrix")


def predicted_profile(pa: ZeroProfile, pb: ZeroProfile, n: int, m: int) -> ZeroProfile:
    """Zero profile of A (x) B from those of A (n x n) and B (m x m)."""
    _check_profile(pa, n)
    _check_profile(pb, m)
    return ZeroProfile(
        z=pa.z * m * m + (n * n - pa.z) * pb.z,
        z_d=pa.z_d * m + (n - pa.z_d) * pb.z_d,
        z_c=pa.z_c * m + (n - pa.z_c) * pb.z_c,
        z_r=pa.z_r * m + (n - pa.z_r) * pb.z_r,
        rank=pa.rank * pb.rank,
    )


def screen(m: Matrix) -> list[str]:
    """Necessary conditions for a 4x4 matrix to be a Kronecker product of 2x2 ones.

    Returns the violated conditions; an empty list means the matrix passes.
    """
    if m.shape != (4, 4):
        raise ValueError(f"screening is for 4x4 matrices, got {m.rows}x{m.cols}")
    p = zero_profile(m)
    reasons = []
    if p.z in FORBIDDEN_Z_4X4:
        reasons.append(f"z={p.z} ∈ {{1,2,3,5,6,9,11}}")
    if p.rank == 3:
        reasons.append("rank=3")
    if p.z_c == 1:
        reasons.append("z_c=1")
    if p.z_r == 1:
        reasons.append("z_r=1")
    if p.z_d == 1:
        reasons.append("z_d=1")
    if (p.z, p.z_d) not in KRON_2X2_PAIRS:
        reasons.append(f"(z,z_d)=({p.z},{p.z_d}) not realizable by a 2x2 Kronecker product")
    return reasons


def extended_matrix(m: Matrix, n: int, k: int) -> Matrix:
    """Rows are the row-major flattenings of the n x n blocks V_11, V_12, ..., V_kk."""
    if not m.is_square or m.rows != n * k:
        raise ValueError(f"a {m.rows}x{m.cols} matrix does not split into a {k}x{k} grid of {n}x{n} blocks")
    rows = []
    for bi in range(k):
        for bj in range(k):
            rows.extend(m.block(bi, bj, n).entries)
    return Matrix(k * k, n * n, rows)


def _rank_one_split(ex: Matrix):
    """(coefficients, base row) if every row is a multiple of the first nonzero row."""
    base = None
    coeffs = []
    for i in range(ex.rows):
        r = ex.row(i)
        if base is None:
            if any(r):
                base = r
                pivot = next(j for j, x in enumerate(r) if x)
                coeffs.append(Fraction(1))
            else:
                coeffs.append(Fraction(0))
            continue
        c = r[pivot] / base[pivot]
        if any(x != c * b for x, b in zip(r, base)):
            return None
        coeffs.append(c)
    if base is None:
        return None
    return coeffs, base


def rank1_factorize(ex: Matrix, n: int, k: int):
    """Split a rank-1 extended matrix into (left k x k, right n x n), else None."""
    if ex.shape != (k * k, n * n):
        raise ValueError(f"extended matrix must be {k * k}x{n * n}")
    split = _rank_one_split(ex)
    if split is None:
        return None
    coeffs, base = split
    return Matrix(k, k, coeffs), Matrix(n, n, base)


def block_splits(dim: int) -> list[tuple[int, int]]:
    """All (n, k) with n * k == dim and n, k > 1."""
    return [(n, dim // n) for n in range(2, dim) if dim % n == 0 and dim // n > 1]


def orbit_search(e: EvolutionAlgebra, n: int, k: int):
    """First permutation (lexicographic, unit scales) giving a rank-1 extended matrix."""
    if e.dim != n * k:
        raise ValueError(f"dimension {e.dim} is not {n}*{k}")
    if not is_perfect(e):
        raise NotPerfectError("orbit search is defined for perfect evolution algebras")
    return next(orbit_witnesses(e, n, k), None)


def orbit_extended_ranks(e: EvolutionAlgebra, n: int, k: int) -> list[tuple[Permutation, int]]:
    """Rank of the extended matrix at every point of the permutation orbit."""
    if not is_perfect(e):
        raise NotPerfectError("orbit is defined for perfect evolution algebras")
    return [(Permutation(images), rank(extended_matrix(e.matrix.permute(images), n, k)))
            for images in permutations(range(e.dim))]


def orbit_witnesses(e: EvolutionAlgebra, n: int, k: int):
    """Every witness in the permutation orbit, in lexicographic order."""
    if e.dim != n * k:
        raise ValueError(f"dimension {e.dim} is not {n}*{k}")
    if not is_perfect(e):
        raise NotPerfectError("orbit search is defined for perfect evolution algebras")
    for images in permutations(range(e.dim)):
        moved = e.matrix.permute(images)
        factors = rank1_factorize(extended_matrix(moved, n, k), n, k)
        if factors is not None:
            yield DecompositionWitness(Permutation(images), (Fraction(1),) * e.dim, *factors, moved)


def _iroot(x: int, d: int):
    """Exact integer d-th root of x >= 0, or None."""
    lo, hi = 0, 1
    while hi ** d <= x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** d < x:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** d == x else None


def _rational_roots(r: Fraction, d: int) -> set:
    """Rational t with t**d == r, for r != 0 and d != 0."""
    if d < 0:
        r, d = 1 / r, -d
    num, den = _iroot(abs(r.numerator), d), _iroot(r.denominator, d)
    if num is None or den is None:
        return set()
    t = Fraction(num, den)
    if d % 2 == 0:
        return {t, -t} if r > 0 else set()
    return {t if r > 0 else -t}


# exponent of t in entry (i, j) after rescaling the last basis vector by t
_T_EXPONENTS = extended_matrix(
    Matrix(4, 4, [2 * (j == 3) - (i == 3) for i in range(4) for j in range(4)]), 2, 2)


def _scaled_witness(e: EvolutionAlgebra, sigma: Permutation):
    """Witness with scales (1, 1, 1, t) after sigma, for a 2+2 split, or None.

    Each 2x2 minor of the extended matrix is a difference of two monomials in t,
    so the admissible t are rational roots of ratios of entries.
    """
    ex = extended_matrix(natural_basis_change(e, sigma).matrix, 2, 2)
    expo = _T_EXPONENTS
    candidates = None
    for r1, r2 in combinations(range(4), 2):
        for c1, c2 in combinations(range(4), 2):
            a, p = ex[r1, c1] * ex[r2, c2], expo[r1, c1] + expo[r2, c2]
            b, q = ex[r1, c2] * ex[r2, c1], expo[r1, c2] + expo[r2, c1]
            if p == q:
                if a != b:
                    return None
                continue
            if not a and not b:
                continue
            if not a or not b:
                return None
            roots = _rational_roots(b / a, int(p - q))
            candidates = roots if candidates is None else candidates & roots
            if not candidates:
                return None
    for t in sorted(candidates or {Fraction(1)}):
        scales = (Fraction(1),) * 3 + (t,)
        moved = natural_basis_change(e, sigma, scales).matrix
        factors = rank1_factorize(extended_matrix(moved, 2, 2), 2, 2)
        if factors is not None:
            return DecompositionWitness(sigma, scales, *factors, moved)
    return None


def natural_basis_search(e: EvolutionAlgebra):
    """Kronecker witness over every natural basis of a perfect 4-dim algebra.

    Natural bases of a perfect evolution algebra differ by permutation and
    rescaling.  Rescalings of the form u (x) v keep a Kronecker product one, so
    a single free scale on the last vector covers the rest.  Unit scales are
    tried first, so this agrees with ``orbit_search`` when that succeeds.
    """
    w = orbit_search(e, 2, 2)
    if w is not None:
        return w
    for images in permutations(range(4)):
        w = _scaled_witness(e, Permutation(images))
        if w is not None:
            return w
    return None
