import itertools
import random
from fractions import Fraction

import pytest

from daggeralg.errors import DimensionMismatch, ViolationWitness
from daggeralg.normed_core import MAX, SUM, ModuleMap, WeightedFreeModule, \
    operator_norm, vector_norm
from daggeralg.scalars import integers_archimedean, rationals_padic
from daggeralg.tensor import (
    NormedAlgebra,
    TensorElement,
    algebra_tensor_submultiplicativity,
    map_tensor,
    scalar_contraction_bound,
    tensor_modules,
    tensor_norm_certified,
    tensor_norm_upper,
)

Z = integers_archimedean()
Q2 = rationals_padic(2)


def zmod(*weights, flavor=SUM):
    return WeightedFreeModule(Z, tuple(Fraction(w) for w in weights), flavor)


class TestTensorModules:
    def test_weights_multiply(self):
        T = tensor_modules(zmod(2), zmod(3), SUM)
        assert T.weights == (Fraction(6),)

    def test_unit_weights(self):
        T = tensor_modules(zmod(1, 1), zmod(1), SUM)
        assert T.weights == (Fraction(1), Fraction(1))

    def test_zero_factor(self):
        T = tensor_modules(zmod(), zmod(3), SUM)
        assert T.rank == 0

    def test_ring_mismatch(self):
        M = WeightedFreeModule(Q2, (Fraction(1),), MAX)
        with pytest.raises(DimensionMismatch):
            tensor_modules(zmod(1), M, SUM)


class TestUpperBound:
    def test_single_term(self):
        x = TensorElement(zmod(2), zmod(3), (((1,), (1,)),))
        assert tensor_norm_upper(x, SUM) == 6

    def test_scaled_term(self):
        x = TensorElement(zmod(2), zmod(3), (((2,), (1,)),))
        assert tensor_norm_upper(x, SUM) == 12

    def test_empty_representation(self):
        x = TensorElement(zmod(2), zmod(3), ())
        assert tensor_norm_upper(x, SUM) == 0


class TestCertified:
    def test_rank_one_exact(self):
        x = TensorElement(zmod(2), zmod(3), (((1,), (1,)),))
        nv = tensor_norm_certified(x, SUM)
        assert nv.lo == nv.hi == 6

    def test_padic_unit_weights_max(self):
        M = WeightedFreeModule(Q2, (Fraction(1),), MAX)
        x = TensorElement(M, M, (((1,), (1,)),))
        nv = tensor_norm_certified(x, MAX)
        assert nv.lo == nv.hi == 1

    def test_zero(self):
        x = TensorElement(zmod(2), zmod(3), ())
        nv = tensor_norm_certified(x, SUM)
        assert nv.lo == nv.hi == 0

    def test_redundant_representation_collapses(self):
        x = TensorElement(
            zmod(2), zmod(3),
            (((1,), (1,)), ((1,), (1,))),
        )
        nv = tensor_norm_certified(x, SUM)
        assert nv.hi == 12

    def test_lower_never_exceeds_any_representation(self):
        rng = random.Random(3)
        for _ in range(40):
            L, R = zmod(rng.randint(1, 4)), zmod(rng.randint(1, 4))
            terms = tuple(
                ((Fraction(rng.randint(-3, 3)),),
                 (Fraction(rng.randint(-3, 3)),))
                for _ in range(rng.randint(1, 3))
            )
            x = TensorElement(L, R, terms)
            assert tensor_norm_certified(x, SUM).lo <= \
                tensor_norm_upper(x, SUM)

    def test_rank_one_brute_force_oracle(self):
        # every representation of e (x) e' has cost >= w*v: brute force
        # over 2-term integer representations with coefficients <= 4
        L, R = zmod(2), zmod(3)
        target = 6
        best = None
        span = range(-4, 5)
        for m1, n1, m2, n2 in itertools.product(span, repeat=4):
            if m1 * n1 + m2 * n2 != 1:
                continue
            cost = vector_norm(L, (m1,)).hi * vector_norm(R, (n1,)).hi \
                + vector_norm(L, (m2,)).hi * vector_norm(R, (n2,)).hi
            best = cost if best is None else min(best, cost)
        assert best == target

    def test_max_never_exceeds_sum(self):
        M = WeightedFreeModule(Q2, (Fraction(1), Fraction(2)), MAX)
        x = TensorElement(M, M, (((1, 1), (1, 0)), ((0, 1), (1, 1))))
        assert tensor_norm_upper(x, MAX) <= tensor_norm_upper(x, SUM)


class TestScalarContraction:
    def test_doubling(self):
        x = TensorElement(zmod(2), zmod(3), (((1,), (1,)),))
        rec = scalar_contraction_bound(2, x)
        assert rec.holds and rec.scaled_bound <= 12

    def test_identity_scalar(self):
        x = TensorElement(zmod(2), zmod(3), (((1,), (1,)),))
        rec = scalar_contraction_bound(1, x)
        assert rec.scaled_bound == rec.original_bound

    def test_zero_scalar(self):
        x = TensorElement(zmod(2), zmod(3), (((1,), (1,)),))
        assert scalar_contraction_bound(0, x).scaled_bound == 0


class TestAlgebras:
    def scalar_algebra(self):
        M = zmod(1)
        return NormedAlgebra(M, (((Fraction(1),),),))

    def test_scalar_square(self):
        A = self.scalar_algebra()
        recs = algebra_tensor_submultiplicativity(A, A, [((2,), (2,))])
        assert recs[0].holds
        assert recs[0].product_norm == 4 and recs[0].bound == 4

    def test_monomial_pair(self):
        # basis 1, X of a truncated univariate algebra with X*X discarded
        M = zmod(1, 1)
        table = (
            ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
            ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0))),
        )
        A = NormedAlgebra(M, table)
        x = (1, 1, 0, 0)  # 1 (x) 1 + 1 (x) X
        y = (1, 0, 1, 0)
        recs = algebra_tensor_submultiplicativity(A, A, [(x, y)])
        assert recs[0].holds

    def test_zero_factor(self):
        A = self.scalar_algebra()
        recs = algebra_tensor_submultiplicativity(A, A, [((0,), (5,))])
        assert recs[0].product_norm == 0


class TestMapTensor:
    def test_operator_norm_functoriality(self):
        rng = random.Random(9)
        for _ in range(30):
            a, b = rng.randint(1, 2), rng.randint(1, 2)
            f = ModuleMap(zmod(*[rng.randint(1, 4) for _ in range(a)]),
                          zmod(*[rng.randint(1, 4) for _ in range(b)]),
                          tuple(tuple(Fraction(rng.randint(-3, 3))
                                      for _ in range(a)) for _ in range(b)))
            g = ModuleMap(zmod(*[rng.randint(1, 4) for _ in range(a)]),
                          zmod(*[rng.randint(1, 4) for _ in range(b)]),
                          tuple(tuple(Fraction(rng.randint(-3, 3))
                                      for _ in range(a)) for _ in range(b)))
            fg = map_tensor(f, g, SUM)
            assert operator_norm(fg).hi <= \
                operator_norm(f).hi * operator_norm(g).hi
