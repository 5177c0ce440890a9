"""Families of 4-dimensional perfect evolution algebras that split as a tensor
product of two 2-dimensional ones, their invariants, and the classification
pipeline.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import decompose, graph
from .evolution import EvolutionAlgebra, NotPerfectError, is_perfect, is_simple
from .linalg import Matrix, Polynomial, charpoly, format_rational, kron, minpoly, to_rational
from .matrixio import json_entry

ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII")

_x = Polynomial([0, 1])


def _lin(r) -> Polynomial:
    return Polynomial.from_roots(r)


def _quad(b, c) -> Polynomial:
    return Polynomial([c, b, 1])


# zero-pattern kinds of an invertible 2x2 structure matrix, stable under swapping the basis
FULL = "full"
TRIANGULAR = "triangular"
ZERO_DIAG = "one-zero-diagonal"
DIAGONAL = "diagonal"
ANTIDIAGONAL = "antidiagonal"


def factor_kind(m: Matrix) -> Optional[str]:
    if m.shape != (2, 2):
        return None
    zeros = {(i, j) for i in range(2) for j in range(2) if m[i, j] == 0}
    if not zeros:
        return FULL
    if zeros in ({(0, 1)}, {(1, 0)}):
        return TRIANGULAR
    if zeros in ({(0, 0)}, {(1, 1)}):
        return ZERO_DIAG
    if zeros == {(0, 1), (1, 0)}:
        return DIAGONAL
    if zeros == {(0, 0), (1, 1)}:
        return ANTIDIAGONAL
    return None


@dataclass(frozen=True)
class FamilyType:
    id: str
    params: tuple
    build: Callable  # params dict -> (left rows, right rows)
    conditions: tuple  # (description, predicate on params dict)
    simple: bool
    z: int
    z_d: int
    p_c: Polynomial
    p_m: Polynomial
    kinds: frozenset = field(default=frozenset())
    # simplicity as listed in the family data; differs from `simple` for III and V, whose
    # triangular factor makes the support graph reducible
    claimed_simple: bool | None = None

    def __post_init__(self):
        if self.claimed_simple is None:
            object.__setattr__(self, "claimed_simple", self.simple)

    def violations(self, params: dict) -> list[str]:
        return [desc for desc, ok in self.conditions if not ok(params)]


def _nz(*names):
    def check(p):
        prod = Fraction(1)
        for n in names:
            prod *= p[n]
        return prod != 0
    return "".join(names) + "≠0", check


def _ne1(a, b):
    return f"{a}{b}≠1", lambda p: p[a] * p[b] != 1


_I2 = [[1, 0], [0, 1]]

FAMILIES = {
    "I": FamilyType(
        "I", ("a", "b", "c", "d"),
        lambda p: ([[1, p["a"]], [p["b"], 1]], [[1, p["c"]], [p["d"], 1]]),
        (_ne1("a", "b"), _ne1("c", "d"), _nz("a", "b", "c", "d")),
        True, 0, 0, _x ** 3 * _lin(4), _x * _lin(4), frozenset({FULL})),
    "II": FamilyType(
        "II", ("b", "c", "d"),
        lambda p: ([[0, 1], [p["b"], 1]], [[1, p["c"]], [p["d"], 1]]),
        (_nz("b", "c", "d"), _ne1("c", "d")),
        True, 4, 2, _x ** 2 * _quad(-2, -4), _x * _quad(-2, -4), frozenset({ZERO_DIAG, FULL})),
    "III": FamilyType(
        "III", ("b", "c", "d"),
        lambda p: ([[1, 0], [p["b"], 1]], [[1, p["c"]], [p["d"], 1]]),
        (_ne1("c", "d"), _nz("b", "c", "d")),
        False, 4, 0, _x ** 2 * _lin(2) ** 2, _x * _lin(2) ** 2, frozenset({TRIANGULAR, FULL}), True),
    "IV": FamilyType(
        "IV", ("b", "d"),
        lambda p: ([[0, 1], [p["b"], 1]], [[0, 1], [p["d"], 1]]),
        (_nz("b", "d"),),
        True, 7, 3, _lin(-1) ** 2 * _quad(-3, 1), _lin(-1) * _quad(-3, 1), frozenset({ZERO_DIAG})),
    "V": FamilyType(
        "V", ("b", "d"),
        lambda p: ([[0, 1], [p["b"], 1]], [[1, 0], [p["d"], 1]]),
        (_nz("b", "d"),),
        False, 7, 2, _quad(-1, -1) ** 2, _quad(-1, -1) ** 2, frozenset({ZERO_DIAG, TRIANGULAR}), True),
    "VI": FamilyType(
        "VI", ("b", "d"),
        lambda p: ([[1, 0], [p["b"], 1]], [[1, 0], [p["d"], 1]]),
        (_nz("b", "d"),),
        False, 7, 0, _lin(1) ** 4, _lin(1) ** 3, frozenset({TRIANGULAR})),
    "VII": FamilyType(
        "VII", ("a", "c", "d"),
        lambda p: ([[0, p["a"]], [1, 0]], [[1, p["c"]], [p["d"], 1]]),
        (_nz("a", "c", "d"), _ne1("c", "d")),
        True, 8, 4, _x ** 2 * _lin(-2) * _lin(2), _x * _lin(-2) * _lin(2), frozenset({ANTIDIAGONAL, FULL})),
    "VIII": FamilyType(
        "VIII", ("c", "d"),
        lambda p: (_I2, [[1, p["c"]], [p["d"], 1]]),
        (_nz("c", "d"), _ne1("c", "d")),
        False, 8, 0, _x ** 2 * _lin(2) ** 2, _x * _lin(2), frozenset({DIAGONAL, FULL})),
    "IX": FamilyType(
        "IX", ("d",),
        lambda p: (_I2, [[0, 1], [p["d"], 1]]),
        (_nz("d"),),
        False, 10, 2, _quad(-1, -1) ** 2, _quad(-1, -1), frozenset({DIAGONAL, ZERO_DIAG})),
    "X": FamilyType(
        "X", ("d",),
        lambda p: (_I2, [[1, 0], [p["d"], 1]]),
        (_nz("d"),),
        False, 10, 0, _lin(1) ** 4, _lin(1) ** 2, frozenset({DIAGONAL, TRIANGULAR})),
    "XI": FamilyType(
        "XI", ("a", "d"),
        lambda p: ([[0, p["a"]], [1, 0]], [[0, 1], [p["d"], 1]]),
        (_nz("a", "d"),),
        True, 10, 4, _quad(-1, -1) * _quad(1, -1), _quad(-1, -1) * _quad(1, -1),
        frozenset({ANTIDIAGONAL, ZERO_DIAG})),
    "XII": FamilyType(
        "XII", ("a", "d"),
        lambda p: ([[0, p["a"]], [1, 0]], [[1, 0], [p["d"], 1]]),
        (_nz("a", "d"),),
        False, 10, 4, _lin(1) ** 2 * _lin(-1) ** 2, _lin(1) ** 2 * _lin(-1) ** 2,
        frozenset({ANTIDIAGONAL, TRIANGULAR})),
    "XIII": FamilyType(
        "XIII", ("d",),
        lambda p: (_I2, [[0, 1], [p["d"], 0]]),
        (_nz("d"),),
        False, 12, 4, _lin(1) ** 2 * _lin(-1) ** 2, _lin(1) * _lin(-1), frozenset({DIAGONAL, ANTIDIAGONAL})),
}

SIMPLE_FAMILIES = frozenset(f for f, t in FAMILIES.items() if t.simple)
CLAIMED_SIMPLE_FAMILIES = frozenset(f for f, t in FAMILIES.items() if t.claimed_simple)


def family_for_factor_kinds(k1: Optional[str], k2: Optional[str]) -> Optional[str]:
    kinds = frozenset({k1, k2})
    for fid in ROMAN:
        if FAMILIES[fid].kinds == kinds:
            return fid
    return None


def instantiate_family(fid: str, params: dict) -> tuple[Matrix, Matrix, Matrix]:
    """Factor structure matrices of a family and their Kronecker product."""
    try:
        fam = FAMILIES[fid]
    except KeyError:
        raise ValueError(f"unknown family type {fid!r}") from None
    missing = [p for p in fam.params if p not in params]
    extra = [p for p in params if p not in fam.params]
    if missing or extra:
        raise ValueError(f"family {fid} takes parameters {', '.join(fam.params)}")
    values = {k: to_rational(v) for k, v in params.items()}
    bad = fam.violations(values)
    if bad:
        raise ValueError(f"family {fid} parameters violate: {', '.join(bad)}")
    left_rows, right_rows = fam.build(values)
    left, right = Matrix.from_rows(left_rows), Matrix.from_rows(right_rows)
    return left, right, kron(left, right)


def sample_parameters(fid: str, rng: random.Random, bound: int = 9) -> dict:
    """Random valid parameters: nonzero rationals p/q with |p|, q <= bound."""
    fam = FAMILIES[fid]
    while True:
        params = {}
        for name in fam.params:
            num = rng.choice([v for v in range(-bound, bound + 1) if v])
            params[name] = Fraction(num, rng.randint(1, bound))
        if not fam.violations(params):
            return params


@dataclass(frozen=True)
class InvariantRecord:
    """Invariants of a 4-dimensional perfect evolution algebra; None means unknown."""

    z: Optional[int] = None
    z_d: Optional[int] = None
    simple: Optional[bool] = None
    p_c: Optional[Polynomial] = None
    p_m: Optional[Polynomial] = None

    def to_json(self) -> dict:
        return {
            "z": self.z, "z_d": self.z_d, "simple": self.simple,
            "p_c": None if self.p_c is None else [format_rational(c) for c in self.p_c.coeffs],
            "p_m": None if self.p_m is None else [format_rational(c) for c in self.p_m.coeffs],
        }


def invariants(e: EvolutionAlgebra) -> InvariantRecord:
    """z, z_d, simplicity, and the char/min polynomials of the 0/1 adjacency matrix."""
    if not is_perfect(e):
        raise NotPerfectError("invariants are defined for perfect evolution algebras")
    prof = decompose.zero_profile(e.matrix)
    adj = e.matrix.support()
    return InvariantRecord(prof.z, prof.z_d, is_simple(e), charpoly(adj), minpoly(adj))


def _matches(fam: FamilyType, pairs) -> bool:
    return all(value is None or getattr(fam, name) == value for name, value in pairs)


def candidate_families(inv: InvariantRecord) -> tuple[str, ...]:
    by_counts = {f for f, t in FAMILIES.items() if _matches(t, [("z", inv.z), ("z_d", inv.z_d), ("simple", inv.simple)])}
    by_polys = {f for f, t in FAMILIES.items() if _matches(t, [("p_c", inv.p_c), ("p_m", inv.p_m)])}
    return tuple(f for f in ROMAN if f in by_counts & by_polys)


VERDICTS = ("not-perfect", "screened-indecomposable", "orbit-indecomposable", "decomposed")


@dataclass(frozen=True)
class ClassificationReport:
    perfect: bool
    verdict: str
    invariants: Optional[InvariantRecord] = None
    stabilizing_index: Optional[int] = None
    screen: tuple = ()
    candidates: tuple = ()
    confirmed: Optional[str] = None
    witness: Optional[decompose.DecompositionWitness] = None
    notes: tuple = ()

    def to_json(self) -> dict:
        w = self.witness
        return {
            "perfect": self.perfect,
            "verdict": self.verdict,
            "stabilizing_index": self.stabilizing_index,
            "invariants": None if self.invariants is None else self.invariants.to_json(),
            "screen": list(self.screen),
            "candidates": list(self.candidates),
            "confirmed": self.confirmed,
            "witness": None if w is None else witness_json(w),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"perfect: {'yes' if self.perfect else 'no'}"]
        if self.invariants is not None:
            inv = self.invariants
            lines += [
                f"stabilizing index: {self.stabilizing_index}",
                f"simple: {'yes' if inv.simple else 'no'}",
                f"z = {inv.z}, z_d = {inv.z_d}",
                f"p_c(λ) = {inv.p_c.to_string('λ')}",
                f"p_m(λ) = {inv.p_m.to_string('λ')}",
                "screening: " + ("passed" if not self.screen else "; ".join(self.screen)),
                "candidate family types: " + (", ".join(self.candidates) or "none"),
            ]
        if self.witness is not None:
            w = self.witness
            lines.append("permutation: " + " ".join(str(i + 1) for i in w.sigma.images))
            if any(c != 1 for c in w.scales):
                lines.append("scales: " + " ".join(format_rational(Fraction(c)) for c in w.scales))
            lines.append(f"factors: {_rows_text(w.left)} ⊗ {_rows_text(w.right)}")
        if self.confirmed:
            lines.append(f"family type: {self.confirmed}")
        lines.append(f"verdict: {self.verdict}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def _rows_text(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in m.to_rows()) + "]"


def witness_json(w: decompose.DecompositionWitness) -> dict:
    def rows(m):
        return [[json_entry(x) for x in r] for r in m.to_rows()]

    return {"sigma": list(w.sigma.images), "scales": [json_entry(Fraction(s)) for s in w.scales],
            "left": rows(w.left), "right": rows(w.right), "transformed": rows(w.transformed)}


def classify(e: EvolutionAlgebra) -> ClassificationReport:
    if e.dim != 4:
        raise ValueError(f"classification is for 4-dimensional algebras, got dimension {e.dim}")
    if not is_perfect(e):
        return ClassificationReport(perfect=False, verdict="not-perfect",
                                    notes=("non-perfect algebras are not classified",))
    inv = invariants(e)
    stab = graph.stabilizing_index(graph.support_graph(e.matrix).adjacency)
    reasons = tuple(decompose.screen(e.matrix))
    candidates = candidate_families(inv)
    common = dict(perfect=True, invariants=inv, stabilizing_index=stab, screen=reasons, candidates=candidates)
    if reasons:
        return ClassificationReport(verdict="screened-indecomposable", **common)
    witness = decompose.natural_basis_search(e)
    if witness is None:
        return ClassificationReport(
            verdict="orbit-indecomposable",
            notes=("no natural basis, permuted or rescaled, gives a Kronecker product of 2x2 factors",),
            **common)
    fid = family_for_factor_kinds(factor_kind(witness.left), factor_kind(witness.right))
    notes = ()
    if fid not in candidates:
        if fid is None:
            notes = ("factor pair matches no listed family type",)
        else:
            notes = (f"factor shapes suggest family {fid}, which the invariants exclude",)
        fid = None
        if len(candidates) == 1:
            # the invariants are complete, so a single match settles it
            fid = candidates[0]
            notes += (f"invariants identify family {fid}",)
    return ClassificationReport(verdict="decomposed", confirmed=fid, witness=witness, notes=notes, **common)
