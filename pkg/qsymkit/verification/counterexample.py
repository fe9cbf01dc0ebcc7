from qsymkit.compositions import Composition
from qsymkit.fixtures import counterexample_entries, expected_counterexample_series
from qsymkit.partitions import gamma_strict, jump_sequence
from qsymkit.poset import canonical_form, make_labeling
from qsymkit.qsym import coefficient_vector, leading_term
from qsymkit.qsymkit_types import LabelingKind
from qsymkit.verification.report import VerificationReport
from qsymkit.verification.suite import Verification

ANCHORS = ((1, 1, 1, 1, 1, 1, 1), (2, 3, 2), (1, 2, 1, 1, 1, 1), (2, 2, 1, 1, 1), (1, 1, 2, 1, 1, 1))


class CounterexampleVerification(Verification):
    """
    The two bundled 7-element posets must be non-isomorphic, share their strict order
    quasisymmetric function, and reproduce the published expansion term by term.
    """
    name = "counterexample"

    def verify(self):
        entries = counterexample_entries()
        expected = expected_counterexample_series()
        report = VerificationReport("counterexample", instances=len(entries))
        report.details["expected terms"] = len(expected)

        forms = [canonical_form(entry.poset) for entry in entries]
        if len(set(forms)) != len(forms):
            report.add_violation("non-isomorphic", "fixture posets are isomorphic",
                                 [form.decode() for form in forms])

        series = [gamma_strict(entry.poset) for entry in entries]
        if any(value != series[0] for value in series[1:]):
            report.add_violation("same-function", "fixture posets have different strict functions",
                                 [entry.name for entry in entries])

        for entry, value in zip(entries, series):
            if value != expected:
                report.add_violation("published-series", f"{entry.name} differs from the published series",
                                     [value - expected])
            jump = jump_sequence(make_labeling(entry.poset, LabelingKind.STRICT))
            report.details[f"{entry.name} jump"] = str(jump)
            if not value.is_zero() and leading_term(value) != (jump, 1):
                report.add_violation("leading-term", f"{entry.name} leading term is not M_{jump}",
                                     [leading_term(value)])
            self.data_log.log_text(f"{self.name}/{entry.name}/series", str(value))
            vector = coefficient_vector(value, entry.poset.n)
            if vector.dtype == object:
                # ASDF stores no object arrays.
                self.data_log.log_text(f"{self.name}/{entry.name}/coefficients", " ".join(map(str, vector)))
            else:
                self.data_log.log_tensor(f"{self.name}/{entry.name}/coefficients", vector)

        for parts in ANCHORS:
            alpha = Composition(parts)
            report.details[f"coefficient of M_{alpha.compact()}"] = series[0].coefficient(alpha)
        return report
