from hypothesis import given, settings, strategies as st
import pytest

from qsymkit.classes import BOWTIE_POSET, N_POSET
from qsymkit.compositions import Composition
from qsymkit.partitions import (StableOrderedPartition, brute_force_stable_partitions, count_stable_partitions,
                                enumerate_stable_partitions, gamma, gamma_strict, gamma_weak, jump_sequence,
                                split_at_ordinal_boundary)
from qsymkit.poset import (LabeledPoset, Poset, antichain, chain, count_linear_extensions, disjoint_union,
                           make_labeling, ordinal_sum)
from qsymkit.qsym import QSymElement, leading_term, mul_concat, mul_oshuffle
from qsymkit.qsymkit_types import LabelingKind


def blocks(*groups):
    return StableOrderedPartition([set(group) for group in groups])


@st.composite
def labeled_posets(draw, max_size=5):
    n = draw(st.integers(min_value=1, max_value=max_size))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    covers = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    omega = draw(st.permutations(range(1, n + 1)))
    return LabeledPoset(Poset.from_covers(n, covers), omega)


class TestVee:

    def test_strict_partitions(self, vee):
        listed = set(enumerate_stable_partitions(make_labeling(vee, LabelingKind.STRICT)))
        assert listed == {blocks({0}, {1}, {2}), blocks({0}, {2}, {1}), blocks({0}, {1, 2})}

    def test_mixed_labeling_partitions(self, vee):
        lp = LabeledPoset(vee, (2, 1, 3))
        listed = set(enumerate_stable_partitions(lp))
        assert listed == {blocks({0}, {1}, {2}), blocks({0}, {2}, {1}), blocks({0}, {1, 2}), blocks({0, 2}, {1})}

    def test_strict_function(self, vee):
        assert gamma_strict(vee) == QSymElement.parse("2M_111 + M_12")

    def test_mixed_labeling_function(self, vee):
        assert gamma(LabeledPoset(vee, (2, 1, 3))) == QSymElement.parse("2M_111 + M_12 + M_21")

    def test_weak_function(self, vee):
        assert gamma_weak(vee) == QSymElement.parse("M_3 + 2M_21 + M_12 + 2M_111")

    def test_jump(self, vee):
        lp = make_labeling(vee, LabelingKind.STRICT)
        assert jump_sequence(lp) == Composition.of(1, 2)
        assert leading_term(gamma(lp)) == (Composition.of(1, 2), 1)
        assert jump_sequence(make_labeling(vee, LabelingKind.NATURAL)) == Composition.of(3)


class TestSmallPosets:

    def test_point(self):
        assert gamma_strict(chain(1)) == QSymElement.monomial((1,))

    def test_empty(self):
        assert gamma_strict(Poset(0, ())) == QSymElement.one()

    def test_chain(self):
        assert gamma_strict(chain(4)) == QSymElement.monomial((1, 1, 1, 1))
        assert gamma_weak(chain(3)) == QSymElement.parse("M_3 + M_21 + M_12 + M_111")

    def test_antichain(self):
        # Every ordered set partition is stable.
        assert gamma_strict(antichain(3)) == QSymElement.parse("M_3 + 3M_21 + 3M_12 + 6M_111")
        assert gamma_strict(antichain(3)) == gamma_weak(antichain(3))

    @pytest.mark.parametrize("p", (N_POSET, BOWTIE_POSET, chain(3), antichain(4)))
    def test_all_ones_coefficient(self, p):
        assert gamma_strict(p).coefficient((1,) * p.n) == count_linear_extensions(p)

    def test_homogeneous(self):
        value = gamma_strict(N_POSET)
        assert value.is_homogeneous() and value.degree == 4


class TestProducts:

    @pytest.mark.parametrize("p, q", ((chain(2), antichain(2)), (N_POSET, chain(1))))
    def test_disjoint_union(self, p, q):
        assert gamma_strict(disjoint_union(p, q)) == mul_oshuffle(gamma_strict(p), gamma_strict(q))

    @pytest.mark.parametrize("p, q", ((antichain(2), antichain(2)), (N_POSET, chain(1))))
    def test_ordinal_sum(self, p, q):
        assert gamma_strict(ordinal_sum(p, q)) == mul_concat(gamma_strict(p), gamma_strict(q))

    def test_split_at_ordinal_boundary(self):
        p, q = antichain(2), chain(2)
        combined = make_labeling(ordinal_sum(p, q), LabelingKind.STRICT)
        images = {split_at_ordinal_boundary(partition, p.n) for partition in enumerate_stable_partitions(combined)}
        lower = set(enumerate_stable_partitions(make_labeling(p, LabelingKind.STRICT)))
        upper = set(enumerate_stable_partitions(make_labeling(q, LabelingKind.STRICT)))
        assert images == {(a, b) for a in lower for b in upper}

    def test_split_rejects_straddling_block(self):
        with pytest.raises(ValueError):
            split_at_ordinal_boundary(blocks({0, 1}, {2}), 1)
        with pytest.raises(ValueError):
            split_at_ordinal_boundary(blocks({1}, {0}), 1)


class TestAgainstBruteForce:

    @settings(max_examples=60, deadline=None)
    @given(labeled_posets())
    def test_recursion_matches_filter(self, lp):
        listed = list(enumerate_stable_partitions(lp))
        assert len(listed) == len(set(listed))
        assert set(listed) == set(brute_force_stable_partitions(lp))
        assert all(partition.is_stable(lp) for partition in listed)

    @settings(max_examples=60, deadline=None)
    @given(labeled_posets(max_size=6))
    def test_count_matches_enumerate(self, lp):
        assert gamma(lp, method="count") == gamma(lp, method="enumerate")

    @settings(max_examples=60, deadline=None)
    @given(labeled_posets(max_size=6))
    def test_leading_term_is_jump(self, lp):
        assert leading_term(gamma(lp)) == (jump_sequence(lp), 1)


class TestErrors:

    def test_gamma_needs_labeled_poset(self, vee):
        with pytest.raises(TypeError):
            gamma(vee)

    def test_unknown_method(self, vee):
        with pytest.raises(ValueError):
            gamma(make_labeling(vee, LabelingKind.STRICT), method="magic")

    def test_empty_block(self):
        with pytest.raises(ValueError):
            StableOrderedPartition([{0}, set()])


def test_count_stable_partitions_types(vee):
    counts = count_stable_partitions(make_labeling(vee, LabelingKind.STRICT))
    assert counts == {(1, 1, 1): 2, (1, 2): 1}


def test_counterexample_pair_shares_strict_function(counterexample_pair):
    first, second = counterexample_pair
    assert gamma_strict(first) == gamma_strict(second)
    assert gamma_strict(first).coefficient((1,) * 7) == 66
