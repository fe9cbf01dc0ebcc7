"""
Compositions: finite tuples of positive integers, the index set of the monomial basis.
"""
from dataclasses import dataclass
from itertools import zip_longest
import numbers
import re

from qsymkit.qsymkit_types import Ordering


class CompositionError(ValueError):
    pass


_COMPACT_PATTERN = re.compile(r"^[1-9]+$")


@dataclass(frozen=True, order=True)
class Composition:
    """
    Immutable composition (a_1, ..., a_l).

    Field-wise dataclass ordering compares the `parts` tuples, which is exactly the
    lexicographic order on compositions: () is the smallest, the first differing part
    decides and a proper prefix is smaller.
    """
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        for part in parts:
            if isinstance(part, bool) or not isinstance(part, numbers.Integral):
                raise TypeError(f"Composition parts must be integers not '{type(part).__name__}'")
            if part < 1:
                raise CompositionError(f"Composition parts must be positive, got {parts}")
        object.__setattr__(self, "parts", tuple(int(part) for part in parts))

    @classmethod
    def of(cls, *parts):
        return cls(parts)

    @classmethod
    def parse(cls, text):
        """
        Read "(1,2,3)", "1,2,3", "()" or the compact digit string "232". A bare digit string is
        always compact, so "101" is rejected rather than read as one part.
        """
        text = text.strip()
        if text in ("()", "", "∅"):
            return cls()
        if _COMPACT_PATTERN.match(text):
            return cls(tuple(int(digit) for digit in text))
        if text.isdigit():
            raise CompositionError(f"Compact composition '{text}' has a zero digit, write multi-digit parts as '(1,10)'")
        body = text[1:-1] if text.startswith("(") and text.endswith(")") else text
        try:
            return cls(tuple(int(token) for token in body.split(",") if token.strip()))
        except ValueError as error:
            raise CompositionError(f"Cannot read a composition from '{text}'") from error

    @property
    def weight(self):
        return sum(self.parts)

    @property
    def length(self):
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, item):
        return self.parts[item]

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        return "(" + ",".join(str(part) for part in self.parts) + ")"

    def __repr__(self):
        return f"Composition{self}"

    def is_compact(self):
        return all(part < 10 for part in self.parts)

    def compact(self):
        """ Digit-string form, only defined when every part is a single digit. """
        if not self.is_compact():
            raise CompositionError(f"{self} has a part with more than one digit")
        return "".join(str(part) for part in self.parts)

    def concat(self, other):
        return concat(self, other)

    def dotplus(self, other):
        return dotplus(self, other)

    def reverse(self):
        return reverse(self)


EMPTY = Composition()


def lex_cmp(a, b):
    """ Three-way lexicographic comparison of two compositions. """
    if a.parts == b.parts:
        return Ordering.EQUAL
    return Ordering.LESS if a.parts < b.parts else Ordering.GREATER


def concat(a, b):
    return Composition(a.parts + b.parts)


def dotplus(a, b):
    """ Coordinatewise sum; the longer composition keeps its surplus parts. """
    return Composition(tuple(x + y for x, y in zip_longest(a.parts, b.parts, fillvalue=0)))


def reverse(a):
    return Composition(a.parts[::-1])


def compositions_of(n):
    """
    Every composition of `n`, lex-descending.
    """
    if n < 0:
        raise CompositionError(f"Cannot compose a negative integer ({n})")

    def _descend(remaining):
        if remaining == 0:
            yield ()
            return
        for first in range(remaining, 0, -1):
            for rest in _descend(remaining - first):
                yield (first,) + rest

    for parts in _descend(n):
        yield Composition(parts)
