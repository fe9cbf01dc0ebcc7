"""
Stable ordered partitions of labeled posets and the generating functions they count.

A stable ordered partition of (P, omega) is a sequence of non-empty blocks covering P such
that u <= v forces block(u) <= block(v), and u < v with omega(u) > omega(v) forces
block(u) < block(v). Gamma(P, omega) is the sum over these partitions of M_type, where the
type is the composition of block sizes.
"""
from collections import Counter
from functools import lru_cache
from itertools import product
import logging

from qsymkit.compositions import Composition
from qsymkit.poset import LabeledPoset, linear_extension, make_labeling
from qsymkit.qsym import QSymElement
from qsymkit.qsymkit_types import LabelingKind
from qsymkit.util import iter_bits, mask_of

log = logging.getLogger(__name__)


class StableOrderedPartition:
    """
    Ordered tuple of disjoint, non-empty element blocks.
    """
    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = tuple(frozenset(block) for block in blocks)
        if any(not block for block in blocks):
            raise ValueError(f"Blocks of an ordered partition must be non-empty: {blocks}")
        self.blocks = blocks

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, item):
        return self.blocks[item]

    @property
    def partition_type(self):
        return Composition(tuple(len(block) for block in self.blocks))

    def block_index(self):
        """ Mapping element -> position of its block. """
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def is_stable(self, lp):
        """ Check the three defining conditions against the labeled poset `lp` directly. """
        index = self.block_index()
        if sorted(index) != list(lp.poset.elements) or sum(map(len, self.blocks)) != lp.n:
            return False
        for v in lp.poset.elements:
            for u in lp.poset.down(v):
                if index[u] > index[v]:
                    return False
                if lp.omega[u] > lp.omega[v] and index[u] == index[v]:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, StableOrderedPartition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(str(v) for v in sorted(block)) + "}" for block in self.blocks)
        return f"StableOrderedPartition({inner})"


def _first_blocks(lp, remaining, order):
    """
    Every admissible first block of the labeled subposet on `remaining`, as bitmasks.

    A first block S must be down-closed in the remaining poset and hold no pair u < v with
    omega(u) > omega(v). With E the remaining elements v whose remaining lower elements all
    carry smaller labels, such an S lies inside A = {v in E : down(v) within E}, and A is
    itself down-closed; conversely every non-empty order ideal of A qualifies. So the first
    blocks are exactly the non-empty order ideals of A. For a strict labeling A is the set of
    remaining minimal elements and every non-empty subset of it is an ideal.
    """
    p, omega = lp.poset, lp.omega
    eligible = 0
    for v in iter_bits(remaining):
        if all(omega[u] < omega[v] for u in iter_bits(p.down_mask(v) & remaining)):
            eligible |= 1 << v
    allowed = mask_of(v for v in iter_bits(eligible) if p.down_mask(v) & remaining & ~eligible == 0)

    ideals = [0]
    for v in order:
        if allowed >> v & 1:
            need = p.down_mask(v) & remaining
            ideals += [ideal | 1 << v for ideal in ideals if need & ~ideal == 0]
    return ideals[1:]


def enumerate_stable_partitions(lp):
    """
    Yield every stable ordered partition of `lp` exactly once, in a fixed order.
    """
    order = linear_extension(lp.poset)

    def _extend(remaining, prefix):
        if not remaining:
            yield StableOrderedPartition(prefix)
            return
        for block in _first_blocks(lp, remaining, order):
            yield from _extend(remaining & ~block, prefix + [tuple(iter_bits(block))])

    yield from _extend(lp.poset.full_mask, [])


def count_stable_partitions(lp):
    """
    Number of stable ordered partitions per type, as a Counter of part tuples.

    Memoized on the bitmask of elements still to be placed; the table lives for one call.
    """
    order = linear_extension(lp.poset)

    @lru_cache(maxsize=None)
    def _count(remaining):
        if not remaining:
            return {(): 1}
        counts = Counter()
        for block in _first_blocks(lp, remaining, order):
            size = bin(block).count("1")
            for parts, count in _count(remaining & ~block).items():
                counts[(size,) + parts] += count
        return dict(counts)

    result = Counter(_count(lp.poset.full_mask))
    log.debug(f"Counted stable partitions of a {lp.n}-element poset over {_count.cache_info().currsize} states.")
    return result


def gamma(lp, method="count"):
    """
    Gamma(P, omega) in the monomial basis.

    :param lp: LabeledPoset.
    :param method: "count" for the memoized recursion, "enumerate" to list every partition.
    :return: QSymElement, homogeneous of degree |P|.
    """
    if not isinstance(lp, LabeledPoset):
        raise TypeError(f"Expected 'LabeledPoset' not '{type(lp).__name__}'")
    if method == "count":
        counts = count_stable_partitions(lp)
        return QSymElement({Composition(parts): count for parts, count in counts.items()})
    elif method == "enumerate":
        counts = Counter(partition.partition_type for partition in enumerate_stable_partitions(lp))
        return QSymElement(counts)
    else:
        raise ValueError(f"Unknown gamma method '{method}', expected 'count' or 'enumerate'")


def gamma_strict(p):
    return gamma(make_labeling(p, LabelingKind.STRICT))


def gamma_weak(p):
    return gamma(make_labeling(p, LabelingKind.NATURAL))


def jump_sequence(lp):
    """
    Composition counting elements by jump, where the jump of v is the largest number of
    strict edges on a chain of covers from v down to a minimal element.
    """
    p, omega = lp.poset, lp.omega
    jump = [0] * p.n
    for v in linear_extension(p):
        jump[v] = max((jump[u] + (omega[u] > omega[v]) for u in p.lower_covers(v)), default=0)
    counts = Counter(jump)
    return Composition(tuple(counts[level] for level in range(max(jump, default=-1) + 1)))


def brute_force_stable_partitions(lp):
    """
    Filter every ordered set partition of `lp` by the defining conditions. Exponential, only
    meant as an oracle on small posets.
    """
    n = lp.n
    if n == 0:
        yield StableOrderedPartition(())
        return
    for size in range(1, n + 1):
        for assignment in product(range(size), repeat=n):
            if len(set(assignment)) != size:
                continue
            blocks = [[v for v in range(n) if assignment[v] == i] for i in range(size)]
            partition = StableOrderedPartition(blocks)
            if partition.is_stable(lp):
                yield partition


def split_at_ordinal_boundary(partition, lower_size):
    """
    Split a stable ordered partition of a strictly labeled ordinal sum P + Q, where P holds
    elements 0..lower_size-1, into its P part and its re-indexed Q part.
    """
    lower, upper = [], []
    for block in partition:
        if all(v < lower_size for v in block):
            if upper:
                raise ValueError(f"{partition} places a block of the lower summand after the upper one")
            lower.append(block)
        elif all(v >= lower_size for v in block):
            upper.append(frozenset(v - lower_size for v in block))
        else:
            raise ValueError(f"{partition} has a block straddling the ordinal boundary at {lower_size}")
    return StableOrderedPartition(lower), StableOrderedPartition(upper)
