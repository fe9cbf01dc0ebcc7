import pytest

from qsymkit.classes import (BOWTIE_POSET, BuildTerm, N_POSET, POINT, RootedTree, _multisets, class_c_membership,
                             enumerate_all_posets, enumerate_all_posets_brute_force, enumerate_njoinfree,
                             enumerate_rooted_trees, enumerate_rooted_trees_brute_force, is_njoinfree_scan,
                             next_poset_level, rooted_tree_to_poset)
from qsymkit.poset import (BoundExceededError, Poset, antichain, canonical_form, chain, disjoint_union, is_isomorphic,
                           ordinal_sum)
from qsymkit.qsymkit_types import TermOp

TREE_COUNTS = (1, 1, 2, 4, 9, 20, 48, 115, 286)
NJOINFREE_COUNTS = (1, 2, 5, 14, 40, 121, 373, 1184)
POSET_COUNTS = (1, 2, 5, 16, 63, 318)


class TestRootedTree:

    def test_encoding_sorts_children(self):
        path = RootedTree.from_children(RootedTree.leaf())
        a = RootedTree.from_children(path, RootedTree.leaf())
        b = RootedTree.from_children(RootedTree.leaf(), path)
        assert a == b
        assert a.encoding == "((())())"
        assert a.size == 4

    def test_from_parents(self):
        tree = RootedTree.from_parents([None, 0, 0])
        assert tree == RootedTree.parse("(()())")

    def test_to_poset(self):
        vee = Poset.from_covers(3, [(0, 1), (0, 2)])
        assert rooted_tree_to_poset(RootedTree.parse("(()())")) == vee
        assert rooted_tree_to_poset(RootedTree.parse("((()))")) == chain(3)
        assert rooted_tree_to_poset(RootedTree.leaf()) == POINT

    @pytest.mark.parametrize("n", range(1, 8))
    def test_counts(self, n):
        trees = enumerate_rooted_trees(n)
        assert len(trees) == TREE_COUNTS[n - 1]
        assert trees == sorted(trees)
        assert all(tree.size == n for tree in trees)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_brute_force_agrees(self, n):
        assert enumerate_rooted_trees_brute_force(n) == enumerate_rooted_trees(n)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", (8, 9))
    def test_larger_counts(self, n):
        assert len(enumerate_rooted_trees(n)) == TREE_COUNTS[n - 1]

    def test_no_trees_without_nodes(self):
        with pytest.raises(ValueError):
            enumerate_rooted_trees(0)

    def test_trees_are_njoinfree(self):
        for tree in enumerate_rooted_trees(6):
            assert is_njoinfree_scan(rooted_tree_to_poset(tree)).is_free


class TestScan:

    def test_forbidden_posets(self):
        assert not is_njoinfree_scan(N_POSET).is_free
        assert not is_njoinfree_scan(BOWTIE_POSET).is_free
        assert is_njoinfree_scan(N_POSET).witness == (0, 1, 2, 3)

    def test_free_posets(self):
        assert is_njoinfree_scan(chain(5)) == (True, None)
        assert is_njoinfree_scan(ordinal_sum(ordinal_sum(chain(1), antichain(3)), chain(1))).is_free
        # Two minima below two maxima form a bowtie.
        assert not is_njoinfree_scan(ordinal_sum(antichain(2), antichain(2))).is_free

    def test_contains_n(self):
        p = disjoint_union(chain(1), ordinal_sum(N_POSET, chain(1)))
        assert not is_njoinfree_scan(p).is_free


class TestMembership:

    def test_point(self):
        result = class_c_membership(POINT)
        assert result.is_member
        assert result.trace.op is TermOp.POINT

    def test_trace_rendering(self):
        p = ordinal_sum(antichain(2), chain(1))
        result = class_c_membership(p)
        assert str(result.trace) == "([1] ⊔ [1]) ⊕ [1]"
        assert result.trace.build() == p

    def test_bottom_first(self, vee):
        assert str(class_c_membership(vee).trace) == "[1] ⊕ ([1] ⊔ [1])"

    @pytest.mark.parametrize("p", (N_POSET, BOWTIE_POSET))
    def test_forbidden_not_members(self, p):
        assert class_c_membership(p) == (False, None)

    def test_empty_not_member(self):
        assert not class_c_membership(Poset(0, ())).is_member

    def test_counterexample_pair_not_members(self, counterexample_pair):
        for p in counterexample_pair:
            assert not class_c_membership(p).is_member
            assert not is_njoinfree_scan(p).is_free

    @pytest.mark.parametrize("n", range(1, 6))
    def test_membership_matches_scan(self, n):
        for p in enumerate_all_posets(n):
            membership = class_c_membership(p)
            assert membership.is_member == is_njoinfree_scan(p).is_free
            if membership.is_member:
                assert is_isomorphic(membership.trace.build(), p)

    def test_build_term_arity(self):
        with pytest.raises(ValueError):
            BuildTerm(TermOp.UNION, [BuildTerm(TermOp.POINT)])
        with pytest.raises(ValueError):
            BuildTerm(TermOp.BOTTOM)


class TestEnumeration:

    @pytest.mark.parametrize("n", range(1, 8))
    def test_njoinfree_counts(self, n):
        posets = enumerate_njoinfree(n)
        assert len(posets) == NJOINFREE_COUNTS[n - 1]
        assert len({canonical_form(p) for p in posets}) == len(posets)

    @pytest.mark.slow
    def test_njoinfree_eight(self):
        assert len(enumerate_njoinfree(8)) == NJOINFREE_COUNTS[7]

    def test_njoinfree_parallel(self):
        assert enumerate_njoinfree(5, jobs=2) == enumerate_njoinfree(5)

    def test_njoinfree_bound(self):
        with pytest.raises(BoundExceededError):
            enumerate_njoinfree(9)

    def test_njoinfree_members_are_free(self):
        for p in enumerate_njoinfree(6):
            assert is_njoinfree_scan(p).is_free

    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_posets_counts(self, n):
        assert len(enumerate_all_posets(n)) == POSET_COUNTS[n - 1]

    def test_all_posets_hard_bound(self, local_config):
        local_config(bounds={"all_posets_max": "9"})
        with pytest.raises(BoundExceededError):
            enumerate_all_posets(7)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_all_posets_brute_force(self, n):
        brute = enumerate_all_posets_brute_force(n)
        assert [canonical_form(p) for p in brute] == [canonical_form(p) for p in enumerate_all_posets(n)]

    def test_brute_force_bound(self):
        with pytest.raises(BoundExceededError):
            enumerate_all_posets_brute_force(5)

    def test_next_level_matches_enumerator(self):
        grown = next_poset_level(enumerate_all_posets(3))
        assert [canonical_form(p) for p in grown] == [canonical_form(p) for p in enumerate_all_posets(4)]

    def test_next_level_past_the_cap(self):
        seven = next_poset_level(enumerate_all_posets(6))
        assert len(seven) == 2045
        assert {p.n for p in seven} == {7}
        forms = {canonical_form(p) for p in seven}
        assert len(forms) == 2045
        assert {canonical_form(p) for p in enumerate_njoinfree(7)} <= forms


def test_multisets_by_size():
    members = {1: ["a"], 2: ["b", "c"]}
    assert list(_multisets(3, 3, lambda size: members.get(size, []))) == [("b", "a"), ("c", "a"), ("a", "a", "a")]
    assert list(_multisets(0, 3, members.get)) == [()]
