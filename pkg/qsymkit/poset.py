"""
Finite posets on {0, ..., n-1} and labeled posets.

Relations are held as bitset rows: `down_mask(v)` has bit u set iff u < v, `up_mask(v)` has
bit w set iff v < w. The numpy matrix form is available as `Poset.lt`.
"""
import logging
from functools import lru_cache

import networkx as nx
import numpy as np

from qsymkit.config import get_bound
from qsymkit.qsymkit_types import LabelingKind
from qsymkit.util import iter_bits, mask_of

log = logging.getLogger(__name__)


class PosetError(ValueError):
    pass


class NotAPartialOrderError(PosetError):
    pass


class BoundExceededError(PosetError):
    pass


class LabelingError(PosetError):
    pass


def check_bound(n, bound, what):
    if bound is not None and n > bound:
        raise BoundExceededError(f"{what}: size {n} exceeds the configured bound {bound}")


class Poset:
    """
    Immutable strict partial order on range(n) with its transitive closure and cover relation.
    """
    __slots__ = ("n", "_down", "_up", "_covers", "_hash")

    def __init__(self, n, down_masks):
        """
        Trusted constructor: `down_masks[v]` must already be the transitively closed down-set of v.
        Use `Poset.from_covers` or `Poset.from_relation` for unchecked input.
        """
        self.n = n
        self._down = tuple(down_masks)
        up = [0] * n
        for v, mask in enumerate(self._down):
            for u in iter_bits(mask):
                up[u] |= 1 << v
        self._up = tuple(up)
        self._covers = None
        self._hash = None

    @classmethod
    def from_relation(cls, matrix):
        """
        Build from any n x n boolean relation; the transitive closure is taken first.
        """
        relation = np.array(matrix, dtype=bool)
        if relation.ndim != 2 or relation.shape[0] != relation.shape[1]:
            raise PosetError(f"Expected a square relation matrix, got shape {relation.shape}")
        n = relation.shape[0]
        closure = relation.copy()
        for k in range(n):
            closure |= np.outer(closure[:, k], closure[k, :])
        if n and closure.diagonal().any():
            cycle = [int(v) for v in np.flatnonzero(closure.diagonal())]
            raise NotAPartialOrderError(f"not a partial order: elements {cycle} lie on a cycle")
        down = [mask_of(int(u) for u in np.flatnonzero(closure[:, v])) for v in range(n)]
        return cls(n, down)

    @classmethod
    def from_covers(cls, n, covers):
        """
        Build from (u, v) pairs meaning u < v. Redundant pairs are dropped by the reduction.
        """
        if n < 0:
            raise PosetError(f"Element count must be non-negative, got {n}")
        relation = np.zeros((n, n), dtype=bool)
        for u, v in covers:
            if not (0 <= u < n and 0 <= v < n):
                raise PosetError(f"Cover ({u}, {v}) references an element outside 0..{n - 1}")
            relation[u, v] = True
        return cls.from_relation(relation)

    # -- queries -------------------------------------------------------------

    def __len__(self):
        return self.n

    @property
    def elements(self):
        return range(self.n)

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def down_mask(self, v):
        return self._down[v]

    def up_mask(self, v):
        return self._up[v]

    def down(self, v):
        return frozenset(iter_bits(self._down[v]))

    def up(self, v):
        return frozenset(iter_bits(self._up[v]))

    def less(self, u, v):
        return bool(self._down[v] >> u & 1)

    def comparable(self, u, v):
        return self.less(u, v) or self.less(v, u)

    @property
    def lt(self):
        matrix = np.zeros((self.n, self.n), dtype=bool)
        for v, mask in enumerate(self._down):
            for u in iter_bits(mask):
                matrix[u, v] = True
        return matrix

    @property
    def covers(self):
        """ Pairs (u, v) with v covering u, sorted. """
        if self._covers is None:
            pairs = []
            for v, mask in enumerate(self._down):
                for u in iter_bits(mask):
                    # Nothing strictly between u and v.
                    if not (mask & self._up[u]):
                        pairs.append((u, v))
            self._covers = tuple(sorted(pairs))
        return self._covers

    def lower_covers(self, v):
        return [u for u in iter_bits(self._down[v]) if not (self._down[v] & self._up[u])]

    def minimals(self):
        return frozenset(v for v in self.elements if not self._down[v])

    def maximals(self):
        return frozenset(v for v in self.elements if not self._up[v])

    def relabel(self, permutation):
        """ Poset with element v renamed to permutation[v]. """
        if sorted(permutation) != list(range(self.n)):
            raise PosetError(f"{permutation} is not a permutation of 0..{self.n - 1}")
        down = [0] * self.n
        for v, mask in enumerate(self._down):
            down[permutation[v]] = mask_of(permutation[u] for u in iter_bits(mask))
        return Poset(self.n, down)

    def to_digraph(self):
        """ Hasse diagram as a networkx DiGraph (edges point upward). """
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(self.covers)
        return graph

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self._down == other._down

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self._down))
        return self._hash

    def __repr__(self):
        return f"Poset(n={self.n}, covers={list(self.covers)})"


def poset_from_covers(n, covers):
    return Poset.from_covers(n, covers)


def chain(n):
    return Poset(n, [(1 << v) - 1 for v in range(n)])


def antichain(n):
    return Poset(n, [0] * n)


EMPTY_POSET = Poset(0, ())


def minimals_maximals(p):
    return p.minimals(), p.maximals()


def component_sets(p):
    """ Element sets of the connected components of the Hasse diagram, ordered by least element. """
    graph = nx.Graph()
    graph.add_nodes_from(p.elements)
    graph.add_edges_from(p.covers)
    return sorted((tuple(sorted(component)) for component in nx.connected_components(graph)), key=min)


def connected_components(p):
    return [full_subposet(p, component) for component in component_sets(p)]


def is_connected(p):
    return p.n > 0 and len(component_sets(p)) == 1


def disjoint_union(p, q):
    """ Parallel composition: q's elements follow p's, no relations across. """
    shifted = [mask << p.n for mask in q._down]
    return Poset(p.n + q.n, list(p._down) + shifted)


def ordinal_sum(p, q):
    """ Series composition: every element of p lies below every element of q. """
    below = p.full_mask
    shifted = [(mask << p.n) | below for mask in q._down]
    return Poset(p.n + q.n, list(p._down) + shifted)


def full_subposet(p, s):
    """ Induced order on the element set `s`, re-indexed in increasing element order. """
    elements = sorted(set(s))
    for v in elements:
        if not 0 <= v < p.n:
            raise PosetError(f"Element {v} is not in a poset of size {p.n}")
    index = {v: i for i, v in enumerate(elements)}
    down = [mask_of(index[u] for u in iter_bits(p.down_mask(v)) if u in index) for v in elements]
    return Poset(len(elements), down)


def linear_extension(p):
    """ Deterministic linear extension: always place the smallest available element. """
    placed = 0
    order = []
    for _ in range(p.n):
        v = next(v for v in p.elements if not placed >> v & 1 and p.down_mask(v) & ~placed == 0)
        order.append(v)
        placed |= 1 << v
    return order


def count_linear_extensions(p):
    """ Number of linear extensions, by dynamic programming over order ideals. """
    @lru_cache(maxsize=None)
    def extend(placed):
        if placed == p.full_mask:
            return 1
        total = 0
        for v in iter_bits(p.full_mask & ~placed):
            if p.down_mask(v) & ~placed == 0:
                total += extend(placed | 1 << v)
        return total

    return extend(0)


# -- isomorphism -------------------------------------------------------------

def _levels(p):
    """ Longest chain below and above each element. """
    height = [0] * p.n
    for v in linear_extension(p):
        height[v] = max((height[u] + 1 for u in p.lower_covers(v)), default=0)
    depth = [0] * p.n
    for v in reversed(linear_extension(p)):
        depth[v] = max((depth[w] + 1 for w in iter_bits(p.up_mask(v))), default=0)
    return height, depth


def _refined_colors(p):
    """
    Isomorphism-invariant element colors: degree and level vectors, refined by the color
    multisets of each element's down-set and up-set until the partition stops splitting.
    """
    height, depth = _levels(p)
    keys = [(bin(p.down_mask(v)).count("1"), bin(p.up_mask(v)).count("1"), height[v], depth[v])
            for v in p.elements]
    colors = _rank(keys)
    while True:
        keys = [(colors[v],
                 tuple(sorted(colors[u] for u in iter_bits(p.down_mask(v)))),
                 tuple(sorted(colors[w] for w in iter_bits(p.up_mask(v)))))
                for v in p.elements]
        refined = _rank(keys)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _rank(keys):
    ranks = {key: rank for rank, key in enumerate(sorted(set(keys)))}
    return [ranks[key] for key in keys]


def canonical_form(p, bound=None):
    """
    Byte string equal for two posets iff they are isomorphic.

    Elements are placed one position at a time in color order; the encoding of an ordering is
    the sequence of step codes, step k recording the relations of the k-th element to the
    earlier ones. The lexicographically least encoding is found by backtracking that only
    branches on candidates attaining the least step code, and never tries a twin (same
    down-set and up-set) ahead of its lower-indexed twin.
    """
    if bound is None:
        bound = get_bound("canonical_form_max")
    check_bound(p.n, bound, "canonical_form")

    n = p.n
    if n == 0:
        return b"0:"
    colors = _refined_colors(p)
    color_sequence = sorted(colors)
    twin_of = {}
    for v in p.elements:
        twin_of.setdefault((p.down_mask(v), p.up_mask(v)), []).append(v)
    earlier_twins = {v: mask_of(t for t in twins if t < v) for twins in twin_of.values() for v in twins}

    best = []

    def step_code(v, order):
        code = 0
        for x in order:
            code = (code << 2) | (p.less(x, v) << 1) | p.less(v, x)
        return code

    def search(order, used, prefix):
        k = len(order)
        if k == n:
            if not best or prefix < best:
                best[:] = prefix
            return
        candidates = [v for v in p.elements
                      if colors[v] == color_sequence[k]
                      and not used >> v & 1
                      and earlier_twins[v] & ~used == 0]
        codes = [(step_code(v, order), v) for v in candidates]
        least = min(code for code, _ in codes)
        extended = prefix + [least]
        # No completion of a prefix above the best one can win.
        if best and extended > best[:k + 1]:
            return
        for code, v in codes:
            if code == least:
                search(order + [v], used | 1 << v, extended)

    search([], 0, [])
    return f"{n}:".encode() + b",".join(format(code, "x").encode() for code in best)


def is_isomorphic(p, q):
    if p.n != q.n or len(p.covers) != len(q.covers):
        return False
    return canonical_form(p) == canonical_form(q)


# -- labelings ---------------------------------------------------------------

class LabeledPoset:
    """
    A poset with a bijective labeling omega onto {1, ..., n}; `omega[v]` is the label of v.
    """
    __slots__ = ("poset", "omega")

    def __init__(self, poset, omega):
        omega = tuple(int(label) for label in omega)
        if sorted(omega) != list(range(1, poset.n + 1)):
            raise LabelingError(f"Labeling {omega} is not a bijection onto 1..{poset.n}")
        self.poset = poset
        self.omega = omega

    @property
    def n(self):
        return self.poset.n

    def is_strict(self):
        return all(self.omega[u] > self.omega[v] for u, v in self.poset.covers)

    def is_natural(self):
        return all(self.omega[u] < self.omega[v] for u, v in self.poset.covers)

    def strict_edges(self):
        return [(u, v) for u, v in self.poset.covers if self.omega[u] > self.omega[v]]

    def __eq__(self, other):
        if not isinstance(other, LabeledPoset):
            return NotImplemented
        return self.poset == other.poset and self.omega == other.omega

    def __hash__(self):
        return hash((self.poset, self.omega))

    def __repr__(self):
        return f"LabeledPoset({self.poset!r}, omega={self.omega})"


def make_labeling(p, kind):
    """
    Natural labeling from the deterministic linear extension, or its complement for strict.
    """
    kind = LabelingKind(kind)
    omega = [0] * p.n
    for position, v in enumerate(linear_extension(p)):
        omega[v] = position + 1 if kind is LabelingKind.NATURAL else p.n - position
    return LabeledPoset(p, omega)


def complement_labeling(lp):
    return LabeledPoset(lp.poset, [lp.n + 1 - label for label in lp.omega])


def random_labeling(p, rng):
    """ Uniform labeling drawn from a numpy Generator. """
    return LabeledPoset(p, [int(label) + 1 for label in rng.permutation(p.n)])
