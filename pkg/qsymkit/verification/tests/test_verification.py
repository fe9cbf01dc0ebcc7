import os

import numpy as np
import pytest

from qsymkit.classes import enumerate_rooted_trees, rooted_tree_to_poset
from qsymkit.compositions import Composition
from qsymkit.datalogging import DataLogReader, DataLogger
from qsymkit.fixtures import counterexample_entries
from qsymkit.poset import BoundExceededError, chain
from qsymkit.qsym import QSymElement
from qsymkit.qsymkit_types import PosetClass, PosetEntry
from qsymkit.verification import (CounterexampleVerification, InjectivityVerification, PropertyVerification,
                                  Verification, VerificationError, VerificationReport)
from qsymkit.verification.properties import random_poset, shrink, smaller_compositions, smaller_elements

SMALL_SUITE = {"exhaustive_pair_size": "4", "exhaustive_poset_size": "4",
               "brute_force_partition_size": "3", "tree_scan_size": "5"}


class TestReport:

    def test_pass_flag(self):
        report = VerificationReport("suite", instances=3)
        assert report.passed
        report.add_violation("check", "broken", [Composition.of(1, 2)])
        assert not report.passed
        assert report.violations[0].witnesses == ("(1,2)",)

    def test_nested_checks(self):
        report = VerificationReport("outer", instances=1)
        inner = report.add_check(VerificationReport("inner", instances=4))
        assert report.total_instances == 5
        inner.add_violation("x", "fails")
        assert not report.passed
        assert len(report.all_violations()) == 1

    def test_text(self):
        report = VerificationReport("suite", instances=2, details={"n=1": "1 members"}, elapsed=1.23456)
        report.add_violation("strict", "2 members share M_1", ["a", "b"])
        assert report.format_text().splitlines() == ["suite: FAIL",
                                                     "  instances: 2",
                                                     "  n=1: 1 members",
                                                     "  violations: 1",
                                                     "    [strict] 2 members share M_1: a | b",
                                                     "result: FAIL",
                                                     "elapsed: 1.235 s"]
        assert "elapsed" not in report.format_text(include_elapsed=False)

    def test_dict(self):
        report = VerificationReport("suite", elapsed=0.5)
        report.add_violation("c", "m", ["w"])
        tree = report.to_dict()
        assert tree["violations"] == [{"check": "c", "message": "m", "witnesses": ["w"]}]
        assert tree["elapsed"] == 0.5
        assert "elapsed" not in report.to_dict(include_elapsed=False)


class TestInjectivity:

    def test_trees(self):
        report = InjectivityVerification(PosetClass.ROOTED_TREES, nmax=7).start()
        assert report.passed
        assert report.instances == 1 + 1 + 2 + 4 + 9 + 20 + 48
        assert report.details["n=7"] == "48 members, 48 distinct strict"

    def test_njoinfree_weak(self):
        report = InjectivityVerification("njoinfree", nmax=5, weak=True).start()
        assert report.passed
        assert report.details["n=5"] == "40 members, 40 distinct strict, 40 distinct weak"

    def test_all_posets(self):
        report = InjectivityVerification(PosetClass.ALL, nmax=4).start()
        assert report.instances == 1 + 2 + 5 + 16
        assert report.details["n=4"].startswith("16 members, ")

    def test_parallel(self):
        serial = InjectivityVerification("trees", nmax=6).start()
        parallel = InjectivityVerification("trees", nmax=6, jobs=2).start()
        assert serial.format_text(include_elapsed=False) == parallel.format_text(include_elapsed=False)

    def test_entries(self):
        report = InjectivityVerification(entries=counterexample_entries()).start()
        assert not report.passed
        assert report.violations[0].witnesses == ("counterexample-a", "counterexample-b")

    def test_repeated_entries_are_not_collisions(self):
        trees = enumerate_rooted_trees(4)
        entries = [PosetEntry(tree.encoding, rooted_tree_to_poset(tree), None) for tree in trees]
        entries.append(PosetEntry("again", rooted_tree_to_poset(trees[0]).relabel([0, 1, 2, 3][::-1]), None))
        assert InjectivityVerification(entries=entries).start().passed

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            InjectivityVerification("njoinfree", nmax=8).start()

    def test_unbounded_needs_nmax(self):
        with pytest.raises(ValueError):
            InjectivityVerification("njoinfree", unbounded=True)

    def test_default_nmax(self):
        assert InjectivityVerification("trees").nmax == 9
        assert InjectivityVerification("njoinfree").nmax == 7


class TestCounterexample:

    def test_pass(self):
        report = CounterexampleVerification().start()
        assert report.passed
        assert report.details["expected terms"] == 31
        assert report.details["coefficient of M_1111111"] == 66
        assert report.details["coefficient of M_232"] == 1

    def test_data_log(self, tmpdir):
        log_dir = str(tmpdir.join("log"))
        CounterexampleVerification(data_log_dir=log_dir).start()
        reader = DataLogReader(log_dir)
        _, series = reader.get("counterexample/counterexample-a/series")
        assert QSymElement.parse(series[0]).coefficient((1,) * 7) == 66
        _, vectors = reader.get("counterexample/counterexample-b/coefficients")
        assert vectors[0].sum() == sum(c for _, c in QSymElement.parse(series[0]).terms())
        assert not DataLogger.has_writers()


class TestProperties:

    def test_small_suite_passes(self, local_config):
        local_config(verification=SMALL_SUITE)
        report = PropertyVerification(seed=1, budget=4).start()
        assert report.passed, report.format_text()
        assert len(report.checks) == 15
        assert report.details == {"seed": 1, "budget": 4}

    def test_deterministic(self, local_config):
        local_config(verification=SMALL_SUITE)
        first = PropertyVerification(seed=5, budget=3).start()
        second = PropertyVerification(seed=5, budget=3).start()
        assert first.format_text(include_elapsed=False) == second.format_text(include_elapsed=False)

    def test_strict_weak_grows_one_level_past_exhaustive_size(self, local_config):
        local_config(verification=dict(SMALL_SUITE, exhaustive_pair_size="5"))
        verification = PropertyVerification(seed=0, budget=2)
        verification.pre_verification()
        report = verification.check_strict_weak_equivalence(verification.rngs["check_strict_weak_equivalence"])
        assert report.passed, report.format_text()
        assert report.details["family 5"].startswith("63 posets, ")
        assert not any("bowtie" in key for key in report.details)

    @pytest.mark.slow
    def test_strict_weak_on_every_seven_element_poset(self):
        verification = PropertyVerification(seed=0, budget=10)
        verification.pre_verification()
        report = verification.check_strict_weak_equivalence(verification.rngs["check_strict_weak_equivalence"])
        assert report.passed, report.format_text()
        assert report.details["family 7"] == "2045 posets, 2044 strict classes, 1 shared by non-isomorphic posets"

    def test_negative_budget(self):
        with pytest.raises(ValueError):
            PropertyVerification(budget=-1)

    def test_shrink_composition(self):
        fails = lambda alpha: alpha.weight >= 3
        assert shrink(Composition.of(2, 3, 1), fails, smaller_compositions) == Composition.of(3)

    def test_shrink_element(self):
        p = QSymElement.parse("3M_12 + M_3")
        fails = lambda q: q.coefficient((1, 2)) != 0
        assert shrink(p, fails, smaller_elements) == QSymElement.parse("M_12")

    def test_random_poset(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            p = random_poset(rng, max_size=5)
            assert 1 <= p.n <= 5


class Broken(Verification):
    name = "broken"

    def verify(self):
        raise KeyError("missing")


class Invalid(Verification):
    name = "invalid"

    def verify(self):
        chain(3).relabel([0, 0, 0])


def test_unexpected_errors_wrapped():
    with pytest.raises(VerificationError) as error:
        Broken().start()
    assert isinstance(error.value.__cause__, KeyError)


def test_value_errors_pass_through():
    with pytest.raises(ValueError):
        Invalid().start()


def test_writer_removed_after_failure(tmpdir):
    with pytest.raises(VerificationError):
        Broken(data_log_dir=str(tmpdir.join("broken"))).start()
    assert not DataLogger.has_writers()
    assert os.path.exists(os.path.join(str(tmpdir), "broken", "data_log_index.asdf"))
