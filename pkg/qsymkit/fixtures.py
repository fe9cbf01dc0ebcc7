"""
Bundled posets: two non-isomorphic 7-element posets sharing their strict order
quasisymmetric function, and the published expansion of that function.
"""
from qsymkit.formats import read_posets
from qsymkit.qsym import QSymElement
from qsymkit.util import find_data_file

COUNTEREXAMPLE_FILES = ("counterexample_a.poset", "counterexample_b.poset")

COUNTEREXAMPLE_SERIES = (
    "M_232 + 2M_2311 + 3M_2221 + 3M_2212 + 9M_22111 + M_2131 + 3M_2122 + 8M_21211 + 7M_21121"
    " + 6M_21112 + 20M_211111 + M_1321 + M_1312 + 3M_13111 + M_1231 + 3M_1222 + 8M_12211"
    " + 8M_12121 + 7M_12112 + 23M_121111 + 2M_1132 + 4M_11311 + 8M_11221 + 8M_11212"
    " + 24M_112111 + 3M_11131 + 9M_11122 + 24M_111211 + 23M_111121 + 20M_111112 + 66M_1111111"
)


def counterexample_entries():
    """ The two fixture posets as PosetEntry records. """
    return [read_posets(find_data_file(filename))[0] for filename in COUNTEREXAMPLE_FILES]


def counterexample_posets():
    return tuple(entry.poset for entry in counterexample_entries())


def expected_counterexample_series():
    return QSymElement.parse(COUNTEREXAMPLE_SERIES)
