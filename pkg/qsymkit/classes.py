"""
Poset families: rooted trees, (N, bowtie)-free posets and the recursively built class C,
with enumerators for each up to isomorphism.
"""
from functools import partial, reduce
from itertools import combinations, combinations_with_replacement, product
import logging

from qsymkit.config import get_bound
from qsymkit.poset import (Poset, canonical_form, check_bound, component_sets,
                           disjoint_union, full_subposet, ordinal_sum)
from qsymkit.qsymkit_types import MembershipResult, ScanResult, TermOp
from qsymkit.util import iter_bits, parallel_map

log = logging.getLogger(__name__)

ALL_POSETS_BRUTE_FORCE_MAX = 4

POINT = Poset(1, (0,))

# a < b > c < d
N_POSET = Poset.from_covers(4, [(0, 1), (2, 1), (2, 3)])
# a < b > c < d and a < d
BOWTIE_POSET = Poset.from_covers(4, [(0, 1), (2, 1), (2, 3), (0, 3)])


# -- rooted trees ------------------------------------------------------------

class RootedTree:
    """
    Unlabeled rooted tree. Children are kept sorted by their encodings, so two trees are
    isomorphic iff their encodings are equal.
    """
    __slots__ = ("children", "encoding", "size")

    def __init__(self, children=()):
        self.children = tuple(sorted(children, key=lambda child: child.encoding))
        self.encoding = "(" + "".join(child.encoding for child in self.children) + ")"
        self.size = 1 + sum(child.size for child in self.children)

    @classmethod
    def leaf(cls):
        return cls()

    @classmethod
    def from_children(cls, *children):
        return cls(children)

    @classmethod
    def from_parents(cls, parents):
        """ Tree on nodes 0..n-1 from `parents[i]` (None for the root 0); parents precede children. """
        children = [[] for _ in parents]
        for node, parent in enumerate(parents):
            if parent is not None:
                children[parent].append(node)
        built = [None] * len(parents)
        for node in reversed(range(len(parents))):
            built[node] = cls(built[child] for child in children[node])
        return built[0]

    @classmethod
    def parse(cls, text):
        from qsymkit.formats import parse_rooted_tree
        return parse_rooted_tree(text)

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.encoding == other.encoding

    def __lt__(self, other):
        return self.encoding < other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def __str__(self):
        return self.encoding

    def __repr__(self):
        return f"RootedTree('{self.encoding}')"


def rooted_tree_to_poset(t):
    """ Root is element 0 and the unique minimum; nodes are numbered in preorder. """
    covers = []
    count = 0

    def _visit(tree):
        nonlocal count
        node = count
        count += 1
        for child in tree.children:
            covers.append((node, count))
            _visit(child)

    _visit(t)
    return Poset.from_covers(count, covers)


def _multisets(total, largest, members):
    """
    Multisets of sized members with sizes summing to `total`, none larger than `largest`.

    :param members: Callable giving the sorted members of a size.
    :return: generator of tuples, larger members first.
    """
    if total == 0:
        yield ()
        return
    for size in range(min(total, largest), 0, -1):
        for count in range(1, total // size + 1):
            for group in combinations_with_replacement(members(size), count):
                for rest in _multisets(total - size * count, size - 1, members):
                    yield group + rest


_tree_cache = {}


def _rooted_trees(n):
    if n not in _tree_cache:
        _tree_cache[n] = tuple(sorted(RootedTree(forest) for forest in _multisets(n - 1, n - 1, _rooted_trees)))
    return _tree_cache[n]


def enumerate_rooted_trees(n):
    """
    One representative per isomorphism class of rooted trees on `n` nodes, sorted by encoding.
    """
    if n < 1:
        raise ValueError(f"Rooted trees have at least one node, got n={n}")
    trees = list(_rooted_trees(n))
    log.info(f"{len(trees)} rooted trees with {n} nodes.")
    return trees


def enumerate_rooted_trees_brute_force(n):
    """ Every parent array with parent[i] < i, deduplicated by encoding. """
    if n < 1:
        raise ValueError(f"Rooted trees have at least one node, got n={n}")
    seen = set()
    for parents in product(*(range(i) for i in range(1, n))):
        seen.add(RootedTree.from_parents((None,) + parents))
    return sorted(seen)


# -- (N, bowtie)-freeness ----------------------------------------------------

_FORBIDDEN = None


def _forbidden_forms():
    global _FORBIDDEN
    if _FORBIDDEN is None:
        _FORBIDDEN = frozenset((canonical_form(N_POSET), canonical_form(BOWTIE_POSET)))
    return _FORBIDDEN


def is_njoinfree_scan(p):
    """
    Test every 4-element full subposet against N and bowtie.

    :return: ScanResult(is_free, witness), witness being the offending 4-tuple or None.
    """
    forbidden = _forbidden_forms()
    for subset in combinations(p.elements, 4):
        sub = full_subposet(p, subset)
        relations = sum(bin(sub.down_mask(v)).count("1") for v in sub.elements)
        # N has three relations, bowtie four.
        if relations not in (3, 4):
            continue
        if canonical_form(sub) in forbidden:
            return ScanResult(False, subset)
    return ScanResult(True, None)


class BuildTerm:
    """
    Construction of a class C poset from single points by disjoint union and by adding a
    new bottom or top element.
    """
    __slots__ = ("op", "children")

    def __init__(self, op, children=()):
        self.op = TermOp(op)
        self.children = tuple(children)
        arity = {TermOp.POINT: 0, TermOp.BOTTOM: 1, TermOp.TOP: 1}.get(self.op)
        if arity is not None and len(self.children) != arity:
            raise ValueError(f"{self.op.name} takes {arity} operands, got {len(self.children)}")
        if self.op is TermOp.UNION and len(self.children) < 2:
            raise ValueError(f"UNION takes at least 2 operands, got {len(self.children)}")

    def build(self):
        if self.op is TermOp.POINT:
            return POINT
        elif self.op is TermOp.UNION:
            return reduce(disjoint_union, (child.build() for child in self.children))
        elif self.op is TermOp.BOTTOM:
            return ordinal_sum(POINT, self.children[0].build())
        else:
            return ordinal_sum(self.children[0].build(), POINT)

    def _wrapped(self, parent_op):
        text = str(self)
        if self.op is TermOp.POINT:
            return text
        if parent_op is TermOp.UNION and self.op is not TermOp.UNION:
            return f"({text})"
        if parent_op is not TermOp.UNION and self.op is TermOp.UNION:
            return f"({text})"
        return text

    def __str__(self):
        if self.op is TermOp.POINT:
            return "[1]"
        elif self.op is TermOp.UNION:
            return " ⊔ ".join(child._wrapped(TermOp.UNION) for child in self.children)
        elif self.op is TermOp.BOTTOM:
            return f"[1] ⊕ {self.children[0]._wrapped(TermOp.BOTTOM)}"
        else:
            return f"{self.children[0]._wrapped(TermOp.TOP)} ⊕ [1]"

    def __eq__(self, other):
        if not isinstance(other, BuildTerm):
            return NotImplemented
        return self.op is other.op and self.children == other.children

    def __hash__(self):
        return hash((self.op, self.children))

    def __repr__(self):
        return f"BuildTerm('{self}')"


def _decompose(p):
    if p.n == 1:
        return BuildTerm(TermOp.POINT)
    components = component_sets(p)
    if len(components) > 1:
        terms = []
        for component in components:
            term = _decompose(full_subposet(p, component))
            if term is None:
                return None
            terms.append(term)
        return BuildTerm(TermOp.UNION, terms)

    # Connected: strip a unique minimum first, otherwise a unique maximum.
    for extremes, op in ((p.minimals(), TermOp.BOTTOM), (p.maximals(), TermOp.TOP)):
        if len(extremes) == 1:
            rest = _decompose(full_subposet(p, set(p.elements) - extremes))
            return None if rest is None else BuildTerm(op, (rest,))
    return None


def class_c_membership(p):
    """
    Decide membership in class C by recursive decomposition.

    :return: MembershipResult(is_member, trace), trace being a BuildTerm or None.
    """
    if p.n == 0:
        return MembershipResult(False, None)
    trace = _decompose(p)
    return MembershipResult(trace is not None, trace)


# -- enumeration -------------------------------------------------------------

def _dedup(posets, jobs, form):
    forms = parallel_map(form, posets, jobs=jobs)
    unique = {}
    for cf, p in zip(forms, posets):
        unique.setdefault(cf, p)
    return [unique[cf] for cf in sorted(unique)]


def enumerate_njoinfree(n, jobs=1, unbounded=False):
    """
    Every (N, bowtie)-free poset on `n` elements up to isomorphism, built as class C: connected
    members of size k are [1] + P' and P' + [1] over all members P' of size k-1, the rest are
    disjoint unions of connected members.

    :param n: Poset size.
    :param jobs: Worker processes for the canonical forms of candidate posets.
    :param unbounded: Lift the configured size bound.
    :return: list of Poset, sorted by canonical form.
    """
    check_bound(n, get_bound("njoinfree_max", unbounded), "enumerate_njoinfree")
    if n <= 0:
        return [Poset(0, ())] if n == 0 else []
    form = partial(canonical_form, bound=get_bound("canonical_form_max", unbounded))

    connected = {1: [POINT]}
    every = {0: [Poset(0, ())], 1: [POINT]}
    for k in range(2, n + 1):
        candidates = []
        for smaller in every[k - 1]:
            candidates.append(ordinal_sum(POINT, smaller))
            candidates.append(ordinal_sum(smaller, POINT))
        connected[k] = _dedup(candidates, jobs, form)
        # Component multisets determine the union up to isomorphism.
        unions = [reduce(disjoint_union, group) for group in _multisets(k, k, connected.__getitem__)]
        every[k] = _dedup(unions, jobs, form)
        log.info(f"{len(every[k])} (N, bowtie)-free posets on {k} elements ({len(connected[k])} connected).")
    return every[n]


def _order_ideals(p):
    """ Every order ideal of `p` as a bitmask; p's elements must be naturally ordered. """
    ideals = [0]
    for v in p.elements:
        need = p.down_mask(v)
        ideals += [ideal | 1 << v for ideal in ideals if need & ~ideal == 0]
    return ideals


def enumerate_all_posets(n, jobs=1):
    """
    Every poset on `n` elements up to isomorphism (n at most 6).

    Each poset has a natural ordering of its elements, so the posets on k+1 elements arise
    from those on k by adding a new maximal element whose down-set is an order ideal.
    """
    check_bound(n, get_bound("all_posets_max"), "enumerate_all_posets")
    if n < 0:
        return []
    level = [Poset(0, ())]
    for _ in range(n):
        level = next_poset_level(level, jobs=jobs)
    return level


def next_poset_level(level, jobs=1):
    """
    Every poset on k+1 elements up to isomorphism, given every poset on k elements as returned
    by `enumerate_all_posets`. Not capped, so callers holding the 6-element level reach 7.
    """
    k = level[0].n
    candidates = [Poset(k + 1, [p.down_mask(v) for v in p.elements] + [ideal]) for p in level for ideal in _order_ideals(p)]
    grown = _dedup(candidates, jobs, canonical_form)
    log.debug(f"{len(candidates)} naturally ordered candidates, {len(grown)} posets on {k + 1} elements.")
    return grown


def enumerate_all_posets_brute_force(n):
    """ Every subset of ordered pairs that is a strict partial order, deduplicated. """
    check_bound(n, ALL_POSETS_BRUTE_FORCE_MAX, "enumerate_all_posets_brute_force")
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    unique = {}
    for chosen in product((False, True), repeat=len(pairs)):
        down = [0] * n
        for (u, v), keep in zip(pairs, chosen):
            if keep:
                down[v] |= 1 << u
        if any(down[u] >> v & 1 for v in range(n) for u in iter_bits(down[v])):
            continue
        if any(down[u] & ~down[v] for v in range(n) for u in iter_bits(down[v])):
            continue
        p = Poset(n, down)
        unique.setdefault(canonical_form(p), p)
    return [unique[cf] for cf in sorted(unique)]

