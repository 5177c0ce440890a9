import random
from fractions import Fraction
from itertools import combinations

import pytest

from evotensor.classification import (CLAIMED_SIMPLE_FAMILIES, FAMILIES, ROMAN, SIMPLE_FAMILIES, InvariantRecord,
                                      candidate_families, classify, factor_kind, family_for_factor_kinds,
                                      instantiate_family, invariants, sample_parameters)
from evotensor.evolution import EvolutionAlgebra, NotPerfectError, is_simple, natural_basis_change
from evotensor.linalg import Matrix, Permutation, Polynomial, kron

M_FINAL = EvolutionAlgebra.from_rows([[1, 0, 0, 2], [0, 1, 0, 1], [1, 2, 1, 2], [0, 0, 0, 1]])
M_PRIME = Matrix.from_rows([[1, 0, 0, 0], [2, 1, 0, 0], [1, 0, 1, 0], [2, 1, 2, 1]])
N = EvolutionAlgebra.from_rows([[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]])
EXPECTED_SIMPLE = {"I", "II", "III", "IV", "V", "VII", "XI"}
UPPER = EvolutionAlgebra.from_rows([[1 if j >= i else 0 for j in range(4)] for i in range(4)])


def P(*coeffs):
    """Polynomial from coefficients, highest degree first."""
    return Polynomial(reversed(coeffs))


class TestFamilyData:
    def test_expanded_polynomials(self):
        assert FAMILIES["I"].p_c == P(1, -4, 0, 0, 0)
        assert FAMILIES["I"].p_m == P(1, -4, 0)
        assert FAMILIES["II"].p_c == P(1, -2, -4, 0, 0)
        assert FAMILIES["IV"].p_c == P(1, -1, -4, -1, 1)
        assert FAMILIES["VI"].p_m == P(1, -3, 3, -1)
        assert FAMILIES["XI"].p_c == P(1, 0, -3, 0, 1)
        assert FAMILIES["XIII"].p_m == P(1, 0, -1)

    def test_diagonal_zero_counts(self):
        expected = dict(I=0, II=2, III=0, IV=3, V=2, VI=0, VII=4, VIII=0, IX=2, X=0, XI=4, XII=4, XIII=4)
        assert {f: FAMILIES[f].z_d for f in ROMAN} == expected

    def test_claimed_simple_families_recorded(self):
        assert CLAIMED_SIMPLE_FAMILIES == EXPECTED_SIMPLE

    def test_stored_simplicity_matches_graph_criterion(self):
        rng = random.Random(11)
        for fid in ROMAN:
            _, _, prod = instantiate_family(fid, sample_parameters(fid, rng))
            assert is_simple(EvolutionAlgebra(prod)) == (fid in SIMPLE_FAMILIES), fid

    def test_expected_simple_set_by_graph_criterion(self):
        # Known to fail for III and V: a triangular factor is not simple
        rng = random.Random(12)
        computed = set()
        for fid in ROMAN:
            results = set()
            for _ in range(5):
                _, _, prod = instantiate_family(fid, sample_parameters(fid, rng))
                results.add(is_simple(EvolutionAlgebra(prod)))
            assert len(results) == 1
            if results.pop():
                computed.add(fid)
        assert computed == EXPECTED_SIMPLE

    def test_triple_separates_families(self):
        for f, g in combinations(ROMAN, 2):
            a, b = FAMILIES[f], FAMILIES[g]
            assert (a.z, a.z_d, a.simple) != (b.z, b.z_d, b.simple), (f, g)

    def test_polynomial_pair_separates_families(self):
        for f, g in combinations(ROMAN, 2):
            a, b = FAMILIES[f], FAMILIES[g]
            assert (a.p_c, a.p_m) != (b.p_c, b.p_m), (f, g)

    def test_z_and_charpoly_separate_families(self):
        for f, g in combinations(ROMAN, 2):
            a, b = FAMILIES[f], FAMILIES[g]
            assert (a.z, a.p_c) != (b.z, b.p_c), (f, g)

    def test_factor_kinds_distinct(self):
        kinds = [FAMILIES[f].kinds for f in ROMAN]
        assert len(set(kinds)) == 13


class TestInstantiate:
    def test_family_one(self):
        left, right, prod = instantiate_family("I", dict(a=2, b=3, c=2, d=3))
        assert left == right == Matrix.from_rows([[1, 2], [3, 1]])
        assert sum(1 for x in prod.entries if x == 0) == 0

    def test_family_six_is_m_prime(self):
        _, _, prod = instantiate_family("VI", dict(b=1, d=2))
        assert prod == M_PRIME

    def test_family_thirteen(self):
        _, _, prod = instantiate_family("XIII", dict(d=1))
        assert sum(1 for x in prod.entries if x == 0) == 12
        assert prod == kron(Matrix.identity(2), Matrix.from_rows([[0, 1], [1, 0]]))

    def test_family_five_has_no_stray_parameter(self):
        _, _, prod = instantiate_family("V", dict(b=2, d=3))
        assert prod.row(1) == tuple(map(Fraction, [0, 0, 3, 1]))

    def test_violated_condition(self):
        with pytest.raises(ValueError, match="ab≠1"):
            instantiate_family("I", dict(a=2, b="1/2", c=2, d=3))
        with pytest.raises(ValueError):
            instantiate_family("IX", dict(d=0))

    def test_wrong_parameters(self):
        with pytest.raises(ValueError):
            instantiate_family("IX", dict(a=1, d=1))
        with pytest.raises(ValueError):
            instantiate_family("XIV", {})


class TestInvariants:
    def test_final_example(self):
        inv = invariants(M_FINAL)
        assert inv.simple is False
        assert inv.p_c == Polynomial.from_roots(1, 1, 1, 1)
        assert inv.p_m == Polynomial.from_roots(1, 1, 1)

    def test_family_samples(self):
        _, _, prod = instantiate_family("I", dict(a=2, b=3, c=5, d=7))
        inv = invariants(EvolutionAlgebra(prod))
        assert inv.simple and inv.p_c == P(1, -4, 0, 0, 0) and inv.p_m == P(1, -4, 0)
        _, _, prod = instantiate_family("XI", dict(a=1, d=1))
        inv = invariants(EvolutionAlgebra(prod))
        assert inv.simple and inv.p_c == P(1, -1, -1) * P(1, 1, -1)

    @pytest.mark.parametrize("fid", ROMAN)
    def test_constant_across_parameters(self, fid):
        rng = random.Random(fid)
        fam = FAMILIES[fid]
        for _ in range(6):
            _, _, prod = instantiate_family(fid, sample_parameters(fid, rng))
            inv = invariants(EvolutionAlgebra(prod))
            assert (inv.z, inv.z_d, inv.simple, inv.p_c, inv.p_m) == (fam.z, fam.z_d, fam.simple, fam.p_c, fam.p_m)

    def test_requires_perfect(self):
        with pytest.raises(NotPerfectError):
            invariants(EvolutionAlgebra(Matrix.zeros(4, 4)))


class TestCandidates:
    def test_charpoly_alone(self):
        assert candidate_families(InvariantRecord(p_c=Polynomial.from_roots(1, 1, 1, 1))) == ("VI", "X")

    def test_both_polynomials(self):
        rec = InvariantRecord(p_c=Polynomial.from_roots(1, 1, 1, 1), p_m=Polynomial.from_roots(1, 1, 1))
        assert candidate_families(rec) == ("VI",)

    def test_zero_count(self):
        assert candidate_families(InvariantRecord(z=0)) == ("I",)

    def test_everything_unknown(self):
        assert candidate_families(InvariantRecord()) == ROMAN


class TestFactorKinds:
    def test_kinds(self):
        assert factor_kind(Matrix.from_rows([[1, 2], [3, 1]])) == "full"
        assert factor_kind(Matrix.from_rows([[1, 2], [0, 1]])) == "triangular"
        assert factor_kind(Matrix.from_rows([[1, 2], [3, 0]])) == "one-zero-diagonal"
        assert factor_kind(Matrix.from_rows([[1, 0], [0, 3]])) == "diagonal"
        assert factor_kind(Matrix.from_rows([[0, 2], [3, 0]])) == "antidiagonal"
        assert factor_kind(Matrix.from_rows([[0, 0], [3, 1]])) is None

    def test_unlisted_pairs(self):
        assert family_for_factor_kinds("diagonal", "diagonal") is None
        assert family_for_factor_kinds("triangular", "antidiagonal") == "XII"


class TestClassify:
    def test_final_example(self):
        r = classify(M_FINAL)
        assert r.verdict == "decomposed"
        assert r.confirmed == "VI"
        assert r.candidates == ("VI",)
        assert r.stabilizing_index == 1
        moved = natural_basis_change(M_FINAL, r.witness.sigma, r.witness.scales)
        assert moved.matrix == kron(r.witness.left, r.witness.right)

    def test_n(self):
        r = classify(N)
        assert r.screen == ()
        assert r.verdict == "orbit-indecomposable"
        assert r.witness is None

    def test_upper(self):
        assert classify(UPPER).verdict == "screened-indecomposable"

    def test_not_perfect(self):
        r = classify(EvolutionAlgebra(Matrix.from_rows([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])))
        assert r.verdict == "not-perfect" and r.invariants is None

    def test_wrong_dimension(self):
        with pytest.raises(ValueError):
            classify(EvolutionAlgebra(Matrix.identity(3)))

    def test_identity_is_decomposed_without_family(self):
        r = classify(EvolutionAlgebra(Matrix.identity(4)))
        assert r.verdict == "decomposed" and r.confirmed is None

    @pytest.mark.parametrize("fid", ROMAN)
    def test_every_family_round_trips(self, fid):
        rng = random.Random("classify" + fid)
        _, _, prod = instantiate_family(fid, sample_parameters(fid, rng))
        images = list(range(4))
        rng.shuffle(images)
        scales = [Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(4)]
        e = natural_basis_change(EvolutionAlgebra(prod), Permutation(images), scales)
        r = classify(e)
        assert fid in r.candidates
        assert r.verdict == "decomposed" and r.confirmed == fid
        assert natural_basis_change(e, r.witness.sigma, r.witness.scales).matrix == r.witness.product()

    def test_unlisted_factor_pair_settled_by_invariants(self):
        swap = Matrix.from_rows([[0, 1], [1, 0]])
        r = classify(EvolutionAlgebra(kron(swap, swap)))
        assert r.verdict == "decomposed" and r.confirmed == "XIII"
        assert any("no listed family" in n for n in r.notes)

    def test_json_shape(self):
        data = classify(M_FINAL).to_json()
        assert data["verdict"] == "decomposed"
        assert data["witness"]["sigma"] == [0, 2, 3, 1]
        assert data["invariants"]["z"] == 7
