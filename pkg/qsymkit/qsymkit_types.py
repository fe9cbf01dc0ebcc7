from collections import namedtuple
from enum import Enum


class Ordering(Enum):
    """
    Result of a three-way comparison.
    """
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def from_sign(cls, value):
        return cls((value > 0) - (value < 0))


class LabelingKind(Enum):
    """
    Enum for the labelings a poset can be given.
    """
    STRICT = "strict"
    NATURAL = "natural"

    @classmethod
    def _missing_(cls, value):
        # "weak" is the name of the generating function attached to a natural labeling.
        if isinstance(value, str) and value.lower() in ("weak", "natural"):
            return cls.NATURAL
        if isinstance(value, str) and value.lower() == "strict":
            return cls.STRICT


class Certificate(Enum):
    """
    Outcome of the leading-part irreducibility test.

    LEFT/RIGHT certify irreducibility, INCONCLUSIVE asserts nothing.
    """
    LEFT = "left"
    RIGHT = "right"
    INCONCLUSIVE = "inconclusive"

    @property
    def certified(self):
        return self is not Certificate.INCONCLUSIVE


class PosetClass(Enum):
    """
    Families the enumerators and the injectivity driver know about.
    """
    def __init__(self, class_name, aliases):
        self.class_name = class_name
        self.aliases = aliases

    ROOTED_TREES = ("rooted-trees", ("trees", "tree", "rooted_trees"))
    NJOINFREE = ("njoinfree", ("n-join-free", "class-c"))
    ALL = ("all", ("posets",))

    @classmethod
    def _missing_(cls, value):
        for item in cls:
            if value == item.class_name or value in item.aliases:
                return item


class TermOp(Enum):
    """
    Constructors of the recursively built class of (N, bowtie)-free posets.
    """
    POINT = "[1]"
    UNION = "⊔"
    BOTTOM = "[1]⊕·"
    TOP = "·⊕[1]"


LeadingTerm = namedtuple("LeadingTerm", "composition, coefficient")

ScanResult = namedtuple("ScanResult", "is_free, witness")

MembershipResult = namedtuple("MembershipResult", "is_member, trace")

PosetEntry = namedtuple("PosetEntry", "name, poset, labeled")

# `witnesses` holds printable forms of the offending objects (canonical forms, series, trees).
Violation = namedtuple("Violation", "check, message, witnesses")


class Pointer:
    def __init__(self, ref):
        super().__getattribute__("point_to")(ref)

    def __getattribute__(self, name):
        if name == "self":
            return super().__getattribute__("ref")
        elif name == "point_to":
            return super().__getattribute__(name)
        else:
            return super().__getattribute__("ref").__getattribute__(name)

    def __setattr__(self, name, value):
        super().__getattribute__("ref").__setattr__(name, value)

    def __delattr__(self, name):
        super().__getattribute__("ref").__delattr__(name)

    def __dir__(self):
        return super().__getattribute__("ref").__dir__()

    def point_to(self, ref):
        super().__setattr__("ref", ref)
