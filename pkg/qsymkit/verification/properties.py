"""
Seeded property suite: randomized algebraic checks on QSym elements and labeled posets, and
exhaustive scans over all small posets. Deterministic given (seed, budget).
"""
from collections import defaultdict
from itertools import product

import networkx as nx
import numpy as np

from qsymkit.classes import (class_c_membership, enumerate_all_posets, enumerate_njoinfree, enumerate_rooted_trees,
                             is_njoinfree_scan, next_poset_level, rooted_tree_to_poset)
from qsymkit.compositions import Composition, dotplus
from qsymkit.config import ALL_POSETS_HARD_MAX, CONFIG_INI, get_bound
from qsymkit.fixtures import counterexample_posets
from qsymkit.partitions import (brute_force_stable_partitions, enumerate_stable_partitions, gamma, gamma_strict,
                                gamma_weak, jump_sequence, split_at_ordinal_boundary)
from qsymkit.poset import (LabeledPoset, Poset, canonical_form, complement_labeling, count_linear_extensions,
                           disjoint_union, full_subposet, is_connected, make_labeling, ordinal_sum, random_labeling)
from qsymkit.qsym import (QSymElement, expand_truncated, irreducible_by_lemma, leading_term, mul_concat,
                          mul_oshuffle, oshuffle_compositions_direct, oshuffle_compositions_rec, rho)
from qsymkit.qsymkit_types import LabelingKind
from qsymkit.util import parallel_map
from qsymkit.verification.report import VerificationReport
from qsymkit.verification.suite import Verification

# -- random instances --------------------------------------------------------


def random_composition(rng, max_length=3, max_part=3):
    length = int(rng.integers(0, max_length + 1))
    return Composition(tuple(int(part) for part in rng.integers(1, max_part + 1, size=length)))


def random_element(rng, max_terms=3, max_length=3, max_part=3, max_coefficient=3):
    """ Non-zero element with up to `max_terms` terms. """
    while True:
        terms = {}
        for _ in range(int(rng.integers(1, max_terms + 1))):
            coefficient = int(rng.integers(1, max_coefficient + 1)) * (1 if rng.random() < 0.7 else -1)
            terms[random_composition(rng, max_length, max_part)] = coefficient
        element = QSymElement(terms)
        if not element.is_zero():
            return element


def random_poset(rng, max_size=7, min_size=1, density=0.35):
    """ Random order: a random upper-triangular relation, closed, then randomly relabeled. """
    n = int(rng.integers(min_size, max_size + 1))
    relation = np.triu(rng.random((n, n)) < density, k=1)
    return Poset.from_relation(relation).relabel([int(v) for v in rng.permutation(n)])


# -- shrinking ---------------------------------------------------------------

def shrink(value, fails, candidates, max_steps=200):
    """
    Greedy shrinker: move to the first candidate that still fails until none does.
    """
    for _ in range(max_steps):
        for candidate in candidates(value):
            if fails(candidate):
                value = candidate
                break
        else:
            return value
    return value


def smaller_compositions(alpha):
    parts = alpha.parts
    for i in range(len(parts)):
        yield Composition(parts[:i] + parts[i + 1:])
    for i, part in enumerate(parts):
        if part > 1:
            yield Composition(parts[:i] + (part - 1,) + parts[i + 1:])


def smaller_elements(p):
    terms = dict(p.terms())
    if len(terms) > 1:
        for alpha in terms:
            yield QSymElement({beta: c for beta, c in terms.items() if beta != alpha})
    for alpha, c in terms.items():
        if abs(c) > 1:
            yield QSymElement({**terms, alpha: c - (1 if c > 0 else -1)})
        for beta in smaller_compositions(alpha):
            if beta not in terms:
                yield QSymElement({**{g: d for g, d in terms.items() if g != alpha}, beta: c})


def smaller_tuples(values, smaller):
    """ Candidates for a tuple: shrink one coordinate at a time. """
    for i, value in enumerate(values):
        for candidate in smaller(value):
            yield values[:i] + (candidate,) + values[i + 1:]


def smaller_posets(p):
    for v in p.elements:
        yield full_subposet(p, [u for u in p.elements if u != v])


def smaller_labeled(lp):
    """ Drop one element, keeping the relative order of the remaining labels. """
    for v in lp.poset.elements:
        keep = [u for u in lp.poset.elements if u != v]
        ranks = {label: rank + 1 for rank, label in enumerate(sorted(lp.omega[u] for u in keep))}
        yield LabeledPoset(full_subposet(lp.poset, keep), [ranks[lp.omega[u]] for u in keep])


# -- worker functions (module level for the process pool) --------------------

def _strict_and_weak(p):
    return gamma_strict(p), gamma_weak(p)


def _product_pair(pair):
    p, q = pair
    gp, gq = gamma_strict(p), gamma_strict(q)
    union_ok = gamma_strict(disjoint_union(p, q)) == mul_oshuffle(gp, gq)
    sum_ok = gamma_strict(ordinal_sum(p, q)) == mul_concat(gp, gq)
    return union_ok, sum_ok


def _ordinal_bijection(pair):
    p, q = pair
    combined = make_labeling(ordinal_sum(p, q), LabelingKind.STRICT)
    images = [split_at_ordinal_boundary(partition, p.n) for partition in enumerate_stable_partitions(combined)]
    lower = list(enumerate_stable_partitions(make_labeling(p, LabelingKind.STRICT)))
    upper = list(enumerate_stable_partitions(make_labeling(q, LabelingKind.STRICT)))
    return len(set(images)) == len(images) and set(images) == set(product(lower, upper))


def _partitions_agree(lp):
    listed = list(enumerate_stable_partitions(lp))
    if len(set(listed)) != len(listed):
        return False
    if set(listed) != set(brute_force_stable_partitions(lp)):
        return False
    return gamma(lp, method="count") == gamma(lp, method="enumerate")


def _leading_term_is_jump(lp):
    return leading_term(gamma(lp)) == (jump_sequence(lp), 1)


class PropertyVerification(Verification):
    """
    Runs every property check as a sub-report of one `properties` report.
    """
    name = "properties"

    def __init__(self, seed=None, budget=None, jobs=None, data_log_dir=None):
        super().__init__(jobs=jobs, data_log_dir=data_log_dir)
        self.seed = CONFIG_INI.getint("verification", "seed") if seed is None else seed
        self.budget = CONFIG_INI.getint("verification", "budget") if budget is None else budget
        if self.budget < 0:
            raise ValueError(f"Budget must be non-negative, got {self.budget}")

        self.pair_size = CONFIG_INI.getint("verification", "exhaustive_pair_size")
        self.poset_size = min(CONFIG_INI.getint("verification", "exhaustive_poset_size"), ALL_POSETS_HARD_MAX)
        self.brute_force_size = CONFIG_INI.getint("verification", "brute_force_partition_size")
        self.tree_size = CONFIG_INI.getint("verification", "tree_scan_size")

        self.posets = {}
        self.rngs = {}

    def checks(self):
        return [self.check_oshuffle_implementations,
                self.check_truncated_oracle,
                self.check_leading_term_product,
                self.check_rho_multiplicative,
                self.check_ring_axioms,
                self.check_gamma_products,
                self.check_ordinal_sum_bijection,
                self.check_leading_term_jump,
                self.check_linear_extensions,
                self.check_irreducible_certificate,
                self.check_strict_weak_equivalence,
                self.check_stable_partitions_brute_force,
                self.check_njoinfree_classification,
                self.check_canonical_form,
                self.check_poset_operations]

    def pre_verification(self):
        largest = min(max(self.poset_size, self.pair_size - 1), get_bound("all_posets_max"))
        for n in range(1, largest + 1):
            self.posets[n] = enumerate_all_posets(n, jobs=self.jobs)
        self.log.info(f"Enumerated {sum(map(len, self.posets.values()))} posets on up to {largest} elements.")

        # One independent stream per check.
        streams = np.random.SeedSequence(self.seed).spawn(len(self.checks()))
        self.rngs = {check.__name__: np.random.default_rng(stream) for check, stream in zip(self.checks(), streams)}

    def verify(self):
        report = VerificationReport("properties", details={"seed": self.seed, "budget": self.budget})
        for check in self.checks():
            sub_report = check(self.rngs[check.__name__])
            report.add_check(sub_report)
            self.log.info(f"{sub_report.suite}: {sub_report.instances} instances, "
                          f"{len(sub_report.violations)} violations.")
            self.data_log.log_scalar(f"{self.name}/{sub_report.suite}/instances", sub_report.instances)
        return report

    def small_posets(self, largest):
        return [p for n in sorted(self.posets) if n <= largest for p in self.posets[n]]

    def _randomized(self, report, name, draw, holds, smaller):
        """ Draw `budget` instances; record a shrunk witness for each failure. """
        for _ in range(self.budget):
            value = draw()
            report.instances += 1
            if not holds(value):
                witness = shrink(value, lambda candidate: not holds(candidate), smaller)
                report.add_violation(name, "property fails", [witness])

    # -- QSym ----------------------------------------------------------------

    def check_oshuffle_implementations(self, rng):
        """ Direct and recursive overlapping shuffles agree; the leading composition is the dotplus. """
        report = VerificationReport("oshuffle-implementations")

        def draw():
            alpha = random_composition(rng, max_length=4)
            beta = random_composition(rng, max_length=max(0, 7 - alpha.length))
            return alpha, beta

        def holds(pair):
            alpha, beta = pair
            direct = oshuffle_compositions_direct(alpha, beta)
            return (direct == oshuffle_compositions_rec(alpha, beta)
                    and leading_term(direct) == (dotplus(alpha, beta), 1))

        self._randomized(report, "direct-vs-recurrence", draw, holds,
                         lambda pair: smaller_tuples(pair, smaller_compositions))
        return report

    def check_truncated_oracle(self, rng):
        report = VerificationReport("truncated-polynomial-oracle")

        def draw():
            return (random_element(rng, max_terms=2, max_length=3, max_part=2),
                    random_element(rng, max_terms=2, max_length=3, max_part=2))

        def holds(pair):
            p, q = pair
            k = max(1, max(alpha.length for alpha in p.support) + max(beta.length for beta in q.support))
            maxdeg = p.degree + q.degree
            return expand_truncated(p * q, k, maxdeg) == expand_truncated(p, k, maxdeg) * expand_truncated(q, k, maxdeg)

        self._randomized(report, "expansion", draw, holds, lambda pair: smaller_tuples(pair, smaller_elements))
        return report

    def check_leading_term_product(self, rng):
        report = VerificationReport("leading-term-product")

        def positive(p):
            return p if leading_term(p).coefficient > 0 else -p

        def draw():
            return positive(random_element(rng)), positive(random_element(rng))

        def holds(pair):
            p, q = pair
            (alpha, c), (beta, d) = leading_term(p), leading_term(q)
            if c <= 0 or d <= 0:
                return True
            return leading_term(p * q) == (dotplus(alpha, beta), c * d)

        self._randomized(report, "leading-term", draw, holds, lambda pair: smaller_tuples(pair, smaller_elements))
        return report

    def check_rho_multiplicative(self, rng):
        report = VerificationReport("rho-multiplicative")

        def draw():
            return random_element(rng), random_element(rng)

        def holds(pair):
            p, q = pair
            return rho(p * q) == rho(p) * rho(q) and rho(rho(p)) == p

        self._randomized(report, "rho", draw, holds, lambda pair: smaller_tuples(pair, smaller_elements))
        return report

    def check_ring_axioms(self, rng):
        report = VerificationReport("ring-axioms")
        one = QSymElement.one()
        m1 = QSymElement.monomial((1,))

        def draw():
            return tuple(random_element(rng, max_terms=2, max_length=2) for _ in range(3))

        def holds(triple):
            p, q, r = triple
            return (p * q == q * p
                    and (p * q) * r == p * (q * r)
                    and p * (q + r) == p * q + p * r
                    and mul_concat(mul_concat(p, q), r) == mul_concat(p, mul_concat(q, r))
                    and p * one == p and mul_concat(one, p) == p == mul_concat(p, one)
                    and (p == q) == (mul_concat(m1, p) == mul_concat(m1, q)))

        self._randomized(report, "axioms", draw, holds, lambda triple: smaller_tuples(triple, smaller_elements))
        return report

    # -- generating functions -------------------------------------------------

    def _poset_pairs(self, total):
        return [(p, q) for a in sorted(self.posets) for b in sorted(self.posets) if a + b <= total
                for p in self.posets[a] for q in self.posets[b]]

    def check_gamma_products(self, rng):
        """ Strict functions turn disjoint unions into overlapping shuffles and ordinal sums into concatenations. """
        report = VerificationReport("gamma-products")
        pairs = self._poset_pairs(self.pair_size)
        results = parallel_map(_product_pair, pairs, jobs=self.jobs)
        for (p, q), (union_ok, sum_ok) in zip(pairs, results):
            report.instances += 1
            for ok, check in ((union_ok, "disjoint-union"), (sum_ok, "ordinal-sum")):
                if not ok:
                    report.add_violation(check, f"fails on a {p.n} + {q.n} pair",
                                         [canonical_form(p).decode(), canonical_form(q).decode()])
        report.details["largest pair"] = self.pair_size
        return report

    def check_ordinal_sum_bijection(self, rng):
        report = VerificationReport("ordinal-sum-bijection")
        pairs = self._poset_pairs(self.brute_force_size)
        for (p, q), ok in zip(pairs, parallel_map(_ordinal_bijection, pairs, jobs=self.jobs)):
            report.instances += 1
            if not ok:
                report.add_violation("split", "splitting at the ordinal boundary is not a bijection",
                                     [canonical_form(p).decode(), canonical_form(q).decode()])
        return report

    def check_leading_term_jump(self, rng):
        report = VerificationReport("leading-term-jump")
        labeled = [make_labeling(p, kind) for p in self.small_posets(self.poset_size)
                   for kind in (LabelingKind.STRICT, LabelingKind.NATURAL)]
        for lp, ok in zip(labeled, parallel_map(_leading_term_is_jump, labeled, jobs=self.jobs)):
            report.instances += 1
            if not ok:
                report.add_violation("exhaustive", "leading term differs from M_jump", [lp])

        self._randomized(report, "random-labeling", lambda: random_labeling(random_poset(rng), rng),
                         _leading_term_is_jump, smaller_labeled)
        return report

    def check_linear_extensions(self, rng):
        report = VerificationReport("linear-extensions")
        for p in self.small_posets(self.poset_size):
            report.instances += 1
            coefficient = gamma_strict(p).coefficient((1,) * p.n)
            if coefficient != count_linear_extensions(p):
                report.add_violation("all-ones", f"coefficient {coefficient} of M_(1,...,1) is not the number of "
                                                 f"linear extensions", [canonical_form(p).decode()])
        return report

    def check_irreducible_certificate(self, rng):
        report = VerificationReport("irreducible-certificate")
        for p in self.small_posets(self.poset_size):
            if len(p.minimals()) == 1 or len(p.maximals()) == 1:
                report.instances += 1
                if not irreducible_by_lemma(gamma_strict(p)).certified:
                    report.add_violation("unique-extremum", "no certificate for a poset with a unique extremum",
                                         [canonical_form(p).decode()])
        return report

    def check_strict_weak_equivalence(self, rng):
        """
        Equal strict functions iff equal weak functions, and equal strict functions force equal
        numbers of minimal and maximal elements.
        """
        report = VerificationReport("strict-weak-equivalence")
        families = {n: posets for n, posets in self.posets.items() if n <= self.poset_size}
        if self.pair_size > self.poset_size and self.pair_size - 1 in self.posets:
            families[self.pair_size] = next_poset_level(self.posets[self.pair_size - 1], jobs=self.jobs)
        elif self.pair_size > self.poset_size and self.pair_size <= get_bound("njoinfree_max"):
            families[f"{self.pair_size} (N, bowtie)-free"] = enumerate_njoinfree(self.pair_size, jobs=self.jobs)
        families["counterexample pair"] = list(counterexample_posets())

        for family, posets in families.items():
            values = parallel_map(_strict_and_weak, posets, jobs=self.jobs)
            report.instances += len(posets)
            by_strict, by_weak = defaultdict(set), defaultdict(set)
            for index, (strict, weak) in enumerate(values):
                by_strict[strict].add(index)
                by_weak[weak].add(index)
            strict_classes = {frozenset(group) for group in by_strict.values()}
            weak_classes = {frozenset(group) for group in by_weak.values()}
            for group in strict_classes ^ weak_classes:
                report.add_violation("strict-vs-weak", f"groupings differ in family {family}",
                                     [canonical_form(posets[i], bound=posets[i].n).decode() for i in sorted(group)])
            for group in strict_classes:
                extremes = {(len(posets[i].minimals()), len(posets[i].maximals())) for i in group}
                if len(extremes) > 1:
                    report.add_violation("minimal-maximal", f"equal strict functions, different extremes in {family}",
                                         [canonical_form(posets[i], bound=posets[i].n).decode() for i in sorted(group)])
            shared = sum(len(group) > 1 for group in strict_classes)
            report.details[f"family {family}"] = (f"{len(posets)} posets, {len(strict_classes)} strict classes, "
                                                  f"{shared} shared by non-isomorphic posets")

        def draw():
            lp = random_labeling(random_poset(rng, max_size=6), rng)
            if rng.random() < 0.5:
                other = random_labeling(lp.poset, rng)
            else:
                permutation = [int(v) for v in rng.permutation(lp.n)]
                relabeled = lp.poset.relabel(permutation)
                omega = [0] * lp.n
                for v, label in enumerate(lp.omega):
                    omega[permutation[v]] = label
                other = LabeledPoset(relabeled, omega)
            return lp, other

        def holds(pair):
            lp, other = pair
            return ((gamma(lp) == gamma(other))
                    == (gamma(complement_labeling(lp)) == gamma(complement_labeling(other))))

        self._randomized(report, "complement", draw, holds, lambda pair: iter(()))
        return report

    def check_stable_partitions_brute_force(self, rng):
        report = VerificationReport("stable-partitions-brute-force")
        labeled = [make_labeling(p, kind) for p in self.small_posets(self.brute_force_size)
                   for kind in (LabelingKind.STRICT, LabelingKind.NATURAL)]
        labeled += [random_labeling(random_poset(rng, max_size=self.brute_force_size), rng)
                    for _ in range(self.budget)]
        for lp, ok in zip(labeled, parallel_map(_partitions_agree, labeled, jobs=self.jobs)):
            report.instances += 1
            if not ok:
                witness = shrink(lp, lambda candidate: not _partitions_agree(candidate), smaller_labeled)
                report.add_violation("recursion-vs-filter", "stable partitions differ from the brute-force filter",
                                     [witness])
        return report

    # -- poset classes ---------------------------------------------------------

    def check_njoinfree_classification(self, rng):
        report = VerificationReport("njoinfree-classification")
        for n in sorted(self.posets):
            if n > self.poset_size:
                continue
            free_forms = set()
            for p in self.posets[n]:
                report.instances += 1
                membership = class_c_membership(p)
                scan = is_njoinfree_scan(p)
                form = canonical_form(p)
                if membership.is_member != scan.is_free:
                    report.add_violation("membership-vs-scan", "recursive decomposition and subset scan disagree",
                                         [form.decode()])
                if membership.is_member:
                    free_forms.add(form)
                    if canonical_form(membership.trace.build()) != form:
                        report.add_violation("trace-replay", "decomposition trace rebuilds another poset",
                                             [form.decode(), membership.trace])
                    if len(p.minimals()) > 1 and len(p.maximals()) > 1 and is_connected(p):
                        report.add_violation("connected-extremum", "connected free poset without unique extremum",
                                             [form.decode()])
            generated = {canonical_form(q) for q in enumerate_njoinfree(n, jobs=self.jobs)}
            if generated != free_forms:
                report.add_violation("enumerator", f"class C enumerator disagrees with the scan at n={n}",
                                     [f.decode() for f in sorted(generated ^ free_forms)])
            report.details[f"n={n}"] = f"{len(self.posets[n])} posets, {len(free_forms)} (N, bowtie)-free"

        for n in range(1, self.tree_size + 1):
            for tree in enumerate_rooted_trees(n):
                report.instances += 1
                if not is_njoinfree_scan(rooted_tree_to_poset(tree)).is_free:
                    report.add_violation("rooted-tree", "rooted tree contains N or bowtie", [tree])
        return report

    def check_canonical_form(self, rng):
        """ Invariant under relabeling, and equal exactly for networkx-isomorphic Hasse diagrams. """
        report = VerificationReport("canonical-form")

        def draw():
            p = random_poset(rng, max_size=9)
            q = random_poset(rng, max_size=p.n, min_size=p.n) if rng.random() < 0.5 else p
            return p, q.relabel([int(v) for v in rng.permutation(q.n)])

        def holds(pair):
            p, q = pair
            isomorphic = nx.is_isomorphic(p.to_digraph(), q.to_digraph())
            return (canonical_form(p) == canonical_form(q)) == isomorphic

        self._randomized(report, "isomorphism", draw, holds, lambda pair: iter(()))
        return report

    def check_poset_operations(self, rng):
        report = VerificationReport("poset-operations")

        def draw():
            return tuple(random_poset(rng, max_size=4) for _ in range(3))

        def holds(triple):
            p, q, r = triple
            if canonical_form(disjoint_union(disjoint_union(p, q), r)) != canonical_form(
                    disjoint_union(p, disjoint_union(q, r))):
                return False
            if ordinal_sum(ordinal_sum(p, q), r) != ordinal_sum(p, ordinal_sum(q, r)):
                return False
            if Poset.from_relation(p.lt) != p or Poset.from_covers(p.n, p.covers) != p:
                return False
            outer = [v for v in p.elements if v % 2 == 0 or v == p.n - 1]
            inner = outer[::2]
            nested = full_subposet(full_subposet(p, outer), [outer.index(v) for v in inner])
            if nested != full_subposet(p, inner):
                return False
            lp = make_labeling(p, LabelingKind.NATURAL)
            if complement_labeling(complement_labeling(lp)) != lp or not complement_labeling(lp).is_strict():
                return False
            return (make_labeling(p, LabelingKind.STRICT).is_strict()
                    and make_labeling(p, LabelingKind.NATURAL).is_natural())

        self._randomized(report, "operations", draw, holds, lambda triple: smaller_tuples(triple, smaller_posets))
        return report

