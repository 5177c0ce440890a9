import random
from fractions import Fraction

import pytest

from evotensor.algebra import (AlgebraStructure, change_basis, is_anticommutative, is_commutative,
                               is_evolution_structure, is_natural_basis, is_perfect, is_zero_square,
                               multiply, square_dim, tensor_algebra)
from evotensor.evolution import EvolutionAlgebra, as_algebra_structure, tensor_evolution
from evotensor.linalg import Matrix

from oracles import random_rational

# e1 e2 = e2 = -e2 e1, e1^2 = e2^2 = 0
A1 = AlgebraStructure.from_products(2, {(0, 1): {1: 1}, (1, 0): {1: -1}})
A2 = tensor_algebra(A1, A1)
NATURAL = [(1, 0, 0, 1), (1, 0, 0, -1), (0, 1, 1, 0), (0, 1, -1, 0)]


def unit(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))


def random_algebra(rng, dim, kind):
    c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if kind in ("commutative", "zero-square") and j < i:
                continue
            vec = [random_rational(rng, bound=3, zero_bias=0.4) for _ in range(dim)]
            if kind == "zero-square" and i == j:
                vec = [Fraction(0)] * dim
            c[i][j] = vec
            if kind == "commutative":
                c[j][i] = vec
            elif kind == "zero-square":
                c[j][i] = [-x for x in vec]
    return AlgebraStructure(dim, c)


KINDS = ("commutative", "zero-square", "general")


class TestExampleAnticommutative:
    def test_multiply(self):
        assert multiply(A1, unit(2, 0), unit(2, 1)) == unit(2, 1)
        assert multiply(A1, unit(2, 1), unit(2, 0)) == tuple(-x for x in unit(2, 1))
        assert multiply(A1, (3, 4), (0, 0)) == (0, 0)

    def test_predicates(self):
        assert is_anticommutative(A1)
        assert is_zero_square(A1)
        assert not is_commutative(A1)
        assert not is_evolution_structure(A1)

    def test_square_dim(self):
        assert square_dim(A1) == 1

    def test_tensor_square_table(self):
        u = [unit(4, i) for i in range(4)]
        table = {(0, 3): u[3], (3, 0): u[3], (1, 2): tuple(-x for x in u[3]), (2, 1): tuple(-x for x in u[3])}
        for i in range(4):
            for j in range(4):
                expected = table.get((i, j), (0, 0, 0, 0))
                assert multiply(A2, u[i], u[j]) == expected, (i, j)
        assert is_commutative(A2)

    def test_multiply_u2_u3(self):
        assert multiply(A2, unit(4, 1), unit(4, 2)) == (0, 0, 0, -1)

    def test_natural_basis(self):
        assert is_natural_basis(A2, NATURAL)
        assert not is_natural_basis(A2, [unit(4, i) for i in range(4)])

    def test_change_to_natural_basis_is_evolution(self):
        p = Matrix.from_rows(NATURAL).transpose()
        b = change_basis(A2, p)
        assert is_evolution_structure(b)


class TestTensorAlgebra:
    def test_unit_factor(self):
        one = AlgebraStructure.from_products(1, {(0, 0): {0: 1}})
        a = random_algebra(random.Random(1), 3, "general")
        assert tensor_algebra(one, a).constants == a.constants

    def test_agrees_with_kronecker_construction(self):
        e1 = EvolutionAlgebra.from_rows([[1, 1], [1, 1]])
        e2 = EvolutionAlgebra.from_rows([[0, 1], [1, 0]])
        via_constants = tensor_algebra(as_algebra_structure(e1), as_algebra_structure(e2))
        via_matrix = as_algebra_structure(tensor_evolution(e1, e2))
        assert via_constants.constants == via_matrix.constants

    def test_evolution_algebras_are_commutative(self):
        rng = random.Random(2)
        for _ in range(10):
            m = Matrix(3, 3, [random_rational(rng) for _ in range(9)])
            assert is_commutative(as_algebra_structure(EvolutionAlgebra(m)))

    def test_json_round_trip(self):
        assert AlgebraStructure.from_json(A2.to_json()) == A2


class TestPredicateTransfer:
    def test_commutative_or_zero_square_pairs_give_commutative(self):
        rng = random.Random(7)
        for _ in range(100):
            kind = rng.choice(("commutative", "zero-square"))
            a = random_algebra(rng, rng.randint(1, 3), kind)
            b = random_algebra(rng, rng.randint(1, 3), kind)
            assert is_commutative(tensor_algebra(a, b))

    def test_commutative_tensor_forces_matching_factors(self):
        rng = random.Random(13)
        seen = 0
        for _ in range(400):
            a = random_algebra(rng, rng.randint(1, 3), rng.choice(KINDS))
            b = random_algebra(rng, rng.randint(1, 3), rng.choice(KINDS))
            t = tensor_algebra(a, b)
            if is_commutative(t) and square_dim(t) > 0:
                seen += 1
                assert ((is_commutative(a) and is_commutative(b))
                        or (is_zero_square(a) and is_zero_square(b)))
        assert seen > 50

    def test_perfect_iff_both_perfect(self):
        rng = random.Random(17)
        outcomes = set()
        for _ in range(150):
            a = random_algebra(rng, rng.randint(1, 3), rng.choice(KINDS))
            b = random_algebra(rng, rng.randint(1, 3), rng.choice(KINDS))
            both = is_perfect(a) and is_perfect(b)
            assert is_perfect(tensor_algebra(a, b)) == both
            outcomes.add(both)
        assert outcomes == {True, False}


class TestNaturalBasis:
    def test_evolution_defining_basis(self):
        e = as_algebra_structure(EvolutionAlgebra.from_rows([[1, 2], [3, 0]]))
        assert is_natural_basis(e, [unit(2, 0), unit(2, 1)])

    def test_invariant_under_permuting_and_rescaling(self):
        rng = random.Random(4)
        for _ in range(20):
            order = list(range(4))
            rng.shuffle(order)
            scales = [Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 3)) for _ in range(4)]
            cand = [tuple(s * x for x in NATURAL[i]) for i, s in zip(order, scales)]
            assert is_natural_basis(A2, cand)

    def test_dependent_vectors(self):
        assert not is_natural_basis(A2, [NATURAL[0], NATURAL[0], NATURAL[2], NATURAL[3]])

    def test_wrong_count(self):
        with pytest.raises(ValueError):
            is_natural_basis(A2, NATURAL[:3])


class TestChangeBasis:
    def test_identity_and_round_trip(self):
        a = random_algebra(random.Random(9), 3, "general")
        assert change_basis(a, Matrix.identity(3)).constants == a.constants
        p = Matrix.from_rows([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
        assert change_basis(change_basis(a, p), p.inverse()).constants == a.constants

    def test_singular(self):
        with pytest.raises(ValueError):
            change_basis(A1, Matrix.from_rows([[1, 2], [2, 4]]))
