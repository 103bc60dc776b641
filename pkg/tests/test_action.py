import random
from fractions import Fraction

import pytest

from conftest import rand_gaussian, rand_homogeneous
from futaki.action import (VectorField, apply_field, block_action, eigenvalue_kappa,
                           normalize_traceless, tangency_certificate)
from futaki.errors import LinearlyDependent, NotEigenvector, NotInSpan, NotTangent
from futaki.localization import random_instance
from futaki.multipoly import GaussianRational as G
from futaki.multipoly import Polynomial
from futaki.parser import parse_polynomial

Z4 = ["z0", "z1", "z2", "z3"]
J = ["z0", "z1", "w", "x", "z"]


def P(text, variables=Z4):
    return parse_polynomial(text, variables)


def diag(*weights):
    return VectorField.diagonal([Fraction(w) for w in weights])


def ndiag(*weights):
    return normalize_traceless(diag(*weights))


FERMAT = P("z0^3 + z1^3 + z2^3 + z3^3")
RANDOM_MATRIX = VectorField([[1, 2, 0, 1], [0, -1, 3, 0], [1, 0, 0, 2], [0, 1, -1, 0]])


class TestNormalize:
    def test_examples(self):
        assert ndiag(0, 6, 3, 4).diagonal_entries() == [Fraction(-13, 4), Fraction(11, 4),
                                                        Fraction(-1, 4), Fraction(3, 4)]
        assert ndiag(0, 3, 2, 2).diagonal_entries() == [Fraction(-7, 4), Fraction(5, 4),
                                                        Fraction(1, 4), Fraction(1, 4)]

    def test_trace_zero_and_idempotent(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(1, 6)
            X = VectorField([[rand_gaussian(rng) for _ in range(n)] for _ in range(n)])
            Y = normalize_traceless(X)
            assert Y.trace() == 0 and Y.normalized
            assert normalize_traceless(Y) == Y

    def test_traceless_unchanged(self):
        X = VectorField([[1, 5], [G(0, 2), -1]])
        assert normalize_traceless(X) == X


class TestApplyField:
    def test_raw_diagonal_example(self):
        # monomial weights under (0,6,3,4): z0*z1^2 -> 12, z1*z2^2 -> 6+6, z3^3 -> 12
        F = P("z0*z1^2 + z1*z2^2 + z3^3")
        assert apply_field(diag(0, 6, 3, 4), F) == 12 * F

    def test_normalized_example(self):
        F = P("z0*z1^2 + z1*z2^2 + z3^3")
        assert apply_field(ndiag(0, 6, 3, 4), F) == Fraction(9, 4) * F

    def test_zero_field(self):
        assert not apply_field(VectorField([[0] * 4] * 4), FERMAT)

    def test_index_convention(self):
        # a[0][1] = 1 means X.F = z1 * dF/dz0
        X = VectorField([[0, 1], [0, 0]])
        assert apply_field(X, P("x^2", ["x", "y"])) == P("2*x*y", ["x", "y"])

    def test_matches_direct_formula(self):
        rng = random.Random(6)
        for _ in range(100):
            n = rng.randint(1, 5)
            X = VectorField([[rand_gaussian(rng) for _ in range(n)] for _ in range(n)])
            F = rand_homogeneous(rng, n, rng.randint(1, 4))
            expected = Polynomial.zero(n)
            for i in range(n):
                for j in range(n):
                    expected = expected + (Polynomial.variable(n, j) * F.partial_derivative(i)) \
                        * X.entries[i][j]
            assert apply_field(X, F) == expected

    def test_degree_preserved(self):
        rng = random.Random(7)
        for _ in range(50):
            n, d = rng.randint(1, 5), rng.randint(1, 5)
            X = VectorField([[rand_gaussian(rng) for _ in range(n)] for _ in range(n)])
            XF = apply_field(X, rand_homogeneous(rng, n, d))
            assert not XF or XF.homogeneous_degree() == d


class TestEigenvalue:
    def test_wu_1(self):
        F = P("z0*z1^2 + z1*z2^2 + z3^3 + z4^3", ["z0", "z1", "z2", "z3", "z4"])
        assert eigenvalue_kappa(ndiag(0, 6, 3, 4, 4), F) == Fraction(9, 5)

    def test_wu_2(self):
        assert eigenvalue_kappa(ndiag(0, 1, 2, 4), P("z3*(z1^2 - z0*z2) + z2^3")) == Fraction(3, 4)

    def test_fermat_not_eigenvector(self):
        # monomial weights 0, 3, 6, 9 under (0,1,2,3): no common eigenvalue
        X = ndiag(0, 1, 2, 3)
        XF = apply_field(X, FERMAT)
        ratios = {XF.coefficient(m) / FERMAT.coefficient(m) for m in FERMAT.terms}
        assert len(ratios) == 4
        with pytest.raises(NotEigenvector) as info:
            eigenvalue_kappa(X, FERMAT)
        assert info.value.witness in FERMAT.terms

    def test_ding_tian_values(self):
        cases = [("z0*z1^2 + z2*z3*(z2 - z3)", (0, 3, 2, 2), Fraction(3, 4)),
                 ("z0*z1^2 + z1*z2^2 + z3^3", (0, 6, 3, 4), Fraction(9, 4)),
                 ("z0*(z1^2 + z2^2) + z3^2*z1", (0, 2, 2, 1), Fraction(1, 4)),
                 ("z0*(z1^2 + z2^2) + z3^3", (0, 3, 3, 2), Fraction(0))]
        for text, weights, kappa in cases:
            assert eigenvalue_kappa(ndiag(*weights), P(text)) == kappa


def _eigen_pairs(seed, count):
    rng = random.Random(seed)
    while count:
        inst = random_instance(rng, max_N=6, max_s=3)
        if inst.polys:
            count -= 1
            yield rng, inst


class TestProperties:
    def test_shift_invariance(self):
        for rng, inst in _eigen_pairs(11, 200):
            X = diag(*inst.raw_weights)
            c = rand_gaussian(rng)
            for F in inst.polys:
                assert eigenvalue_kappa(normalize_traceless(X.shifted(c)), F) == \
                    eigenvalue_kappa(normalize_traceless(X), F)
                # raw eigenvalue moves by c*d
                assert eigenvalue_kappa(X.shifted(c), F) == \
                    eigenvalue_kappa(X, F) + c * F.homogeneous_degree()

    def test_linearity(self):
        for rng, inst in _eigen_pairs(12, 200):
            X = ndiag(*inst.raw_weights)
            a = rand_gaussian(rng)
            for F in inst.polys:
                assert apply_field(X.scale(a), F) == apply_field(X, F) * a
                if a:
                    assert eigenvalue_kappa(X.scale(a), F) == a * eigenvalue_kappa(X, F)

    def test_permutation_equivariance(self):
        for rng, inst in _eigen_pairs(13, 200):
            n = inst.N + 1
            perm = list(range(n))
            rng.shuffle(perm)
            X = ndiag(*inst.raw_weights)
            Xp = X.conjugate_by_permutation(perm)
            for F in inst.polys:
                Fp = Polynomial(n, {tuple(m[perm[k]] for k in range(n)): c
                                    for m, c in F.terms.items()})
                assert eigenvalue_kappa(Xp, Fp) == eigenvalue_kappa(X, F)

    def test_permutation_equivariance_general_field(self):
        rng = random.Random(14)
        for _ in range(50):
            n = rng.randint(2, 5)
            perm = list(range(n))
            rng.shuffle(perm)
            X = VectorField([[rand_gaussian(rng) for _ in range(n)] for _ in range(n)])
            F = rand_homogeneous(rng, n, rng.randint(1, 3))
            relabel = lambda Q: Polynomial(n, {tuple(m[perm[k]] for k in range(n)): c
                                               for m, c in Q.terms.items()})
            assert apply_field(X.conjugate_by_permutation(perm), relabel(F)) == \
                relabel(apply_field(X, F))


class TestBlockAction:
    def test_jeffres_1(self):
        polys = [P("z0*z1 + w^2 + x^2", J), P("z1*w + z^2", J)]
        action = block_action(ndiag(0, 2, 1, 1, Fraction(3, 2)), polys)
        assert action.is_diagonal()
        assert action.kappas() == [Fraction(-1, 5), Fraction(4, 5)]
        assert action.kappa == Fraction(3, 5)

    def test_jeffres_2(self):
        polys = [P("z0*z1 + z^2", J), P("z1^2 + w*x", J)]
        action = block_action(ndiag(0, 2, 2, 2, 1), polys)
        assert action.kappas() == [Fraction(-4, 5), Fraction(6, 5)]

    def test_single_polynomial(self):
        F = P("z3*(z1^2 - z0*z2) + z2^3")
        X = ndiag(0, 1, 2, 4)
        action = block_action(X, [F])
        assert len(action.blocks) == 1 and action.blocks[0].matrix == ((G(Fraction(3, 4)),),)
        assert action.kappa == eigenvalue_kappa(X, F)

    def test_mixing_block(self):
        # two weight vectors a, b of weights 1 and 2; F1 = a + b, F2 = a - b
        x = ["x", "y", "z"]
        X = diag(0, 1, 2)
        polys = [P("x*y + x*z", x), P("x*y - x*z", x)]
        action = block_action(X, polys)
        assert not action.is_diagonal()
        block = action.blocks[0]
        for a, k in enumerate(block.indices):
            rebuilt = sum((polys[j] * block.matrix[a][b] for b, j in enumerate(block.indices)),
                          Polynomial.zero(3))
            assert rebuilt == apply_field(X, polys[k])
        assert action.kappa == 3  # eigenvalues 1 and 2

    def test_not_in_span(self):
        x = ["x", "y", "z"]
        polys = [P("x^2", x), P("y^2", x)]
        with pytest.raises(NotInSpan):
            block_action(VectorField([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), polys)

    def test_linearly_dependent(self):
        with pytest.raises(LinearlyDependent):
            block_action(ndiag(0, 1, 2, 3), [P("z0*z1"), P("2*z0*z1")])


class TestTangency:
    def test_wu_2_certificate(self):
        F = P("z3*(z1^2 - z0*z2) + z2^3")
        X = ndiag(0, 1, 2, 4)
        cert = tangency_certificate(X, [F])
        assert cert.multipliers == ((Polynomial.constant(4, Fraction(3, 4)),),)
        assert cert.verify(X, [F])

    def test_ding_tian_1_certificate(self):
        F = P("z0*z1^2 + z2*z3*(z2 - z3)")
        cert = tangency_certificate(ndiag(0, 3, 2, 2), [F])
        assert cert.multipliers[0][0] == Polynomial.constant(4, Fraction(3, 4))

    def test_block_solution_is_certificate(self):
        polys = [P("z0*z1 + w^2 + x^2", J), P("z1*w + z^2", J)]
        X = ndiag(0, 2, 1, 1, Fraction(3, 2))
        cert = tangency_certificate(X, polys)
        action = block_action(X, polys)
        block = action.blocks[0]
        for a in range(2):
            for b in range(2):
                assert cert.multipliers[a][b] == Polynomial.constant(5, block.matrix[a][b])

    def test_mixed_degree_certificate(self):
        # X.q = -q + 3*z2*h lies in the ideal but needs a degree-1 multiplier
        polys = [P("z0"), P("z1^2 + z0*z2")]
        X = ndiag(0, 1, 5, 0)
        cert = tangency_certificate(X, polys)
        assert cert.verify(X, polys)
        assert cert.multipliers[1][0].homogeneous_degree() == 1
        assert cert.multipliers[0][1] is None

    def test_random_matrix_vs_fermat(self):
        X = normalize_traceless(RANDOM_MATRIX)
        XF = apply_field(X, FERMAT)
        # the only degree-3 elements of (F) are scalar multiples of F; check the residual
        lead = FERMAT.monomials()[0]
        c = XF.coefficient(lead) / FERMAT.coefficient(lead)
        assert XF - FERMAT * c
        with pytest.raises(NotTangent) as info:
            tangency_certificate(X, [FERMAT])
        assert info.value.index == 0 and info.value.witness == XF

    def test_soundness_random(self):
        rng = random.Random(15)
        for _ in range(100):
            inst = random_instance(rng, max_N=5, max_s=3)
            X = ndiag(*inst.raw_weights)
            cert = tangency_certificate(X, list(inst.polys))
            assert cert.verify(X, list(inst.polys))

    def test_empty(self):
        assert tangency_certificate(ndiag(0, 1, 2), []).multipliers == ()
