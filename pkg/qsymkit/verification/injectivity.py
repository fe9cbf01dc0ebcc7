from collections import defaultdict

import numpy as np

from qsymkit.classes import (enumerate_all_posets, enumerate_njoinfree, enumerate_rooted_trees,
                             enumerate_rooted_trees_brute_force, rooted_tree_to_poset)
from qsymkit.config import get_bound
from qsymkit.partitions import gamma_strict, gamma_weak
from qsymkit.poset import canonical_form, check_bound
from qsymkit.qsymkit_types import PosetClass
from qsymkit.util import parallel_map
from qsymkit.verification.report import VerificationReport
from qsymkit.verification.suite import Verification

_CLASS_BOUNDS = {PosetClass.ROOTED_TREES: "rooted_trees_injectivity_max",
                 PosetClass.NJOINFREE: "njoinfree_injectivity_max",
                 PosetClass.ALL: "all_posets_max"}


def _canonical_label(poset):
    return canonical_form(poset, bound=poset.n).decode()


class InjectivityVerification(Verification):
    """
    Compute the strict (and with `weak`, the weak) order quasisymmetric function of every
    member of a family, size by size, and report every group of non-isomorphic members
    sharing a value.
    """
    name = "injectivity"

    def __init__(self, poset_class=PosetClass.ROOTED_TREES, nmax=None, weak=False, entries=None,
                 unbounded=False, check_counts=True, jobs=None, data_log_dir=None):
        """
        :param poset_class: PosetClass to enumerate, ignored when `entries` is given.
        :param nmax: Largest member size, defaults to the class bound.
        :param weak: Also check the weak function.
        :param entries: PosetEntry records (e.g. from a poset file) checked instead of a class.
        :param unbounded: Lift the configured bounds.
        :param check_counts: Cross-check rooted tree counts against the brute-force enumerator.
        """
        super().__init__(jobs=jobs, data_log_dir=data_log_dir)
        self.poset_class = PosetClass(poset_class)
        self.entries = list(entries) if entries is not None else None
        self.weak = weak
        self.unbounded = unbounded
        self.check_counts = check_counts

        bound = None if self.entries is not None else get_bound(_CLASS_BOUNDS[self.poset_class], unbounded)
        self.nmax = bound if nmax is None else nmax
        if self.entries is None and self.nmax is None:
            raise ValueError("nmax is required when bounds are lifted")
        self.bound = bound

    @property
    def family_name(self):
        return "input" if self.entries is not None else self.poset_class.class_name

    def pre_verification(self):
        if self.entries is None:
            check_bound(self.nmax, self.bound, f"injectivity {self.family_name}")
        if self.unbounded:
            self.log.warning(f"Size bounds lifted, checking {self.family_name} up to n={self.nmax}.")

    def families(self):
        """ Yield (n, posets, labels) per member size. """
        if self.entries is not None:
            by_size = defaultdict(list)
            for entry in self.entries:
                by_size[entry.poset.n].append(entry)
            for n in sorted(by_size):
                yield n, [entry.poset for entry in by_size[n]], [entry.name for entry in by_size[n]]
            return

        for n in range(1, self.nmax + 1):
            if self.poset_class is PosetClass.ROOTED_TREES:
                trees = enumerate_rooted_trees(n)
                yield n, [rooted_tree_to_poset(tree) for tree in trees], [tree.encoding for tree in trees]
            elif self.poset_class is PosetClass.NJOINFREE:
                posets = enumerate_njoinfree(n, jobs=self.jobs, unbounded=self.unbounded)
                yield n, posets, [_canonical_label(p) for p in posets]
            else:
                posets = enumerate_all_posets(n, jobs=self.jobs)
                yield n, posets, [_canonical_label(p) for p in posets]

    def _collisions(self, report, kind, func, n, posets, labels):
        values = parallel_map(func, posets, jobs=self.jobs)
        groups = defaultdict(list)
        for value, label, poset in zip(values, labels, posets):
            groups[value].append((label, poset))
        for value, group in groups.items():
            # Input files may repeat a poset up to isomorphism.
            if len(group) > 1 and len({_canonical_label(poset) for _, poset in group}) > 1:
                report.add_violation(kind, f"{len(group)} members with {n} elements share {value}",
                                     [label for label, _ in group])
        self.data_log.log_tensor(f"{self.name}/{self.family_name}/{kind}/n={n}/support_sizes",
                                 np.array([len(value) for value in values], dtype=np.int64))
        return len(groups)

    def verify(self):
        report = VerificationReport(f"injectivity {self.family_name}")
        for n, posets, labels in self.families():
            report.instances += len(posets)
            distinct = self._collisions(report, "strict", gamma_strict, n, posets, labels)
            line = f"{len(posets)} members, {distinct} distinct strict"
            if self.weak:
                distinct = self._collisions(report, "weak", gamma_weak, n, posets, labels)
                line += f", {distinct} distinct weak"
            report.details[f"n={n}"] = line
            self.log.info(f"n={n}: {line}")
            self.data_log.log_scalar(f"{self.name}/{self.family_name}/n={n}/instances", len(posets))

            if self.entries is None and self.poset_class is PosetClass.ROOTED_TREES and self.check_counts:
                expected = len(enumerate_rooted_trees_brute_force(n))
                if expected != len(posets):
                    report.add_violation("tree-count", f"{len(posets)} rooted trees with {n} nodes, "
                                                       f"brute force finds {expected}")
        return report
