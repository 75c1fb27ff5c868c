import random
from fractions import Fraction

import pytest

from daggeralg.errors import UnsupportedRing
from daggeralg.nonarch import (
    FlavoredPresentation,
    check_adjunction,
    pi_free,
    pi_map,
    pi_module,
    pi_tensor_check,
)
from daggeralg.normed_core import (
    MAX,
    SUM,
    ModuleMap,
    PresentedModule,
    WeightedFreeModule,
    operator_norm,
)
from daggeralg.scalars import (
    integers_archimedean,
    integers_trivial,
    rationals_padic,
)

Z = integers_archimedean()
ZT = integers_trivial()
Q2 = rationals_padic(2)


def qmod(*weights, flavor=SUM):
    return WeightedFreeModule(Q2, tuple(Fraction(w) for w in weights), flavor)


class TestPiFree:
    def test_switches_flavor_keeps_weights(self):
        M = qmod(1, 2)
        R = pi_free(M)
        assert R.flavor == MAX and R.weights == M.weights

    def test_idempotent(self):
        M = qmod(1, 2)
        assert pi_free(pi_free(M)) == pi_free(M)

    def test_rejects_archimedean_ring(self):
        M = WeightedFreeModule(Z, (Fraction(1),), SUM)
        with pytest.raises(UnsupportedRing):
            pi_free(M)


class TestPiModule:
    def presented(self):
        amb = qmod(1, 1)
        rel = ModuleMap(qmod(1), amb, ((Fraction(2),), (Fraction(0),)))
        return FlavoredPresentation(PresentedModule(amb, relations=rel))

    def test_reflection_reflavors_everything(self):
        R = pi_module(self.presented())
        assert R.flavor == MAX
        assert R.module.ambient.weights == (Fraction(1), Fraction(1))
        assert R.module.relations.matrix == ((Fraction(2),), (Fraction(0),))
        assert R.module.relations.source.flavor == MAX

    def test_idempotent(self):
        R = pi_module(self.presented())
        assert pi_module(R) == R

    def test_presentation_rejects_archimedean(self):
        amb = WeightedFreeModule(Z, (Fraction(1),), SUM)
        rel = ModuleMap(WeightedFreeModule(Z, (Fraction(1),), SUM), amb,
                        ((Fraction(2),),))
        with pytest.raises(UnsupportedRing):
            FlavoredPresentation(PresentedModule(amb, relations=rel))


class TestPiMap:
    def test_matrix_preserved_and_norm_unchanged(self):
        f = ModuleMap(qmod(1, 1), qmod(1), ((Fraction(2), Fraction(1)),))
        g = pi_map(f)
        assert g.matrix == f.matrix
        # both norms are the columnwise maximum, so they agree exactly
        assert operator_norm(g) == operator_norm(f)


class TestAdjunction:
    def test_row_of_ones(self):
        recs = check_adjunction(qmod(1, 1), qmod(1),
                                [((Fraction(1), Fraction(1)),)])
        assert recs[0].equal

    def test_p_power_entries(self):
        recs = check_adjunction(
            qmod(1, 2), qmod(1),
            [((Fraction(2), Fraction(1)),),
             ((Fraction(1, 2), Fraction(4)),)],
        )
        assert all(r.equal for r in recs)

    def test_zero_map(self):
        recs = check_adjunction(qmod(1), qmod(1), [((Fraction(0),),)])
        assert recs[0].equal
        assert recs[0].norm_from_sum_source.hi == 0

    def test_random_matrices_always_equal(self):
        rng = random.Random(13)
        for _ in range(100):
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            src = qmod(*[Fraction(2) ** rng.randint(-2, 2) for _ in range(a)])
            tgt = qmod(*[Fraction(1)] * b)
            mat = tuple(
                tuple(Fraction(2) ** rng.randint(-3, 3) * rng.choice([0, 1])
                      for _ in range(a))
                for _ in range(b)
            )
            assert check_adjunction(src, tgt, [mat])[0].equal

    def test_trivial_valuation_ring(self):
        M = WeightedFreeModule(ZT, (Fraction(1), Fraction(1)), SUM)
        recs = check_adjunction(M, M, [((Fraction(1), Fraction(1)),
                                        (Fraction(0), Fraction(1)))])
        assert recs[0].equal

    def test_rejects_archimedean(self):
        M = WeightedFreeModule(Z, (Fraction(1),), SUM)
        with pytest.raises(UnsupportedRing):
            check_adjunction(M, M, [((Fraction(1),),)])


class TestTensorIntertwine:
    def test_single_generators(self):
        rec = pi_tensor_check(qmod(2), qmod(3))
        assert rec.confirmed
        assert rec.weights_reflect_then_tensor == (Fraction(6),)
        assert rec.weights_tensor_then_reflect == (Fraction(6),)

    def test_rank_two_factors(self):
        rec = pi_tensor_check(qmod(1, 2), qmod(1, 4))
        assert rec.confirmed
        assert rec.weights_reflect_then_tensor == \
            (Fraction(1), Fraction(4), Fraction(2), Fraction(8))

    def test_flavor_of_input_is_irrelevant(self):
        a = pi_tensor_check(qmod(1, 2), qmod(3))
        b = pi_tensor_check(qmod(1, 2, flavor=MAX), qmod(3, flavor=MAX))
        assert a == b
