"""
The ring of quasisymmetric functions in the monomial basis.

An element is stored as a sparse map from `Composition` to a nonzero Python integer,
iterated lex-descending. The ring product is the overlapping shuffle (also available as
`*`), the concatenation product is `concat`.
"""
from collections import defaultdict, namedtuple
from functools import lru_cache, reduce
from itertools import combinations
import json
import logging
import math
import numbers
import re

import numpy as np

from qsymkit.compositions import Composition, CompositionError, EMPTY, compositions_of
from qsymkit.config import CONFIG_INI
from qsymkit.qsymkit_types import Certificate, LeadingTerm

log = logging.getLogger(__name__)


class QSymError(ValueError):
    pass


class ZeroElementError(QSymError):
    pass


class ConstantElementError(QSymError):
    pass


class OshuffleMismatchError(QSymError):
    pass


def _as_composition(alpha):
    return alpha if isinstance(alpha, Composition) else Composition(tuple(alpha))


def _as_int(coefficient):
    if isinstance(coefficient, bool) or not isinstance(coefficient, numbers.Integral):
        raise TypeError(f"Expected an integer coefficient but got '{type(coefficient).__name__}'")
    return int(coefficient)


class QSymElement:
    """
    Finitely supported integer combination of monomial quasisymmetric functions M_alpha.

    Instances are immutable; every operation returns a new element.
    """
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        accumulated = defaultdict(int)
        for alpha, coefficient in (terms or {}).items():
            accumulated[_as_composition(alpha)] += _as_int(coefficient)
        ordered = sorted(((alpha, c) for alpha, c in accumulated.items() if c), reverse=True)
        object.__setattr__(self, "_terms", dict(ordered))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"'{type(self).__name__}' is immutable")

    @classmethod
    def monomial(cls, alpha, coefficient=1):
        return cls({_as_composition(alpha): coefficient})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({EMPTY: 1})

    # -- queries -------------------------------------------------------------

    def terms(self):
        """ (composition, coefficient) pairs, lex-descending. """
        return iter(self._terms.items())

    @property
    def support(self):
        return tuple(self._terms)

    def coefficient(self, alpha):
        return self._terms.get(_as_composition(alpha), 0)

    def is_zero(self):
        return not self._terms

    @property
    def degree(self):
        return max((alpha.weight for alpha in self._terms), default=0)

    def is_constant(self):
        return self.degree == 0

    def is_homogeneous(self):
        return len({alpha.weight for alpha in self._terms}) <= 1

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, QSymElement):
            return self._terms == other._terms
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return self == QSymElement.one() * int(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(self._terms.items())))
        return self._hash

    def __reduce__(self):
        return (QSymElement, (dict(self._terms),))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        accumulated = dict(self._terms)
        for alpha, coefficient in other.terms():
            accumulated[alpha] = accumulated.get(alpha, 0) + coefficient
        return QSymElement(accumulated)

    def __neg__(self):
        return QSymElement({alpha: -c for alpha, c in self.terms()})

    def __sub__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QSymElement):
            return mul_oshuffle(self, other)
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return QSymElement({alpha: c * int(other) for alpha, c in self.terms()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def concat(self, other):
        return mul_concat(self, other)

    # -- text and json -------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for alpha, coefficient in self.terms():
            magnitude = abs(coefficient)
            if not alpha:
                body = str(magnitude)
            else:
                name = f"M_{alpha.compact()}" if alpha.is_compact() else f"M_{alpha}"
                body = name if magnitude == 1 else f"{magnitude}{name}"
            sign = "-" if coefficient < 0 else "+"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"QSymElement({self})"

    _TERM = re.compile(r"([+-]?)(\d*)(?:M_(\([0-9,]*\)|[0-9]+))?")

    @classmethod
    def parse(cls, text):
        """
        Read the compact rendering, e.g. "M_232 + 2M_2311 - M_(1,10) + 3".
        """
        source = re.sub(r"\s+", "", text)
        if source in ("", "0"):
            return cls.zero()

        accumulated = defaultdict(int)
        position = 0
        while position < len(source):
            match = cls._TERM.match(source, position)
            sign, digits, composition = match.groups()
            if match.end() == position or (not digits and composition is None):
                raise QSymError(f"Cannot read a term at offset {position} of '{text}'")
            if position > 0 and not sign:
                raise QSymError(f"Missing '+' or '-' before offset {position} of '{text}'")
            coefficient = int(digits) if digits else 1
            if sign == "-":
                coefficient = -coefficient
            try:
                alpha = Composition.parse(composition) if composition is not None else EMPTY
            except CompositionError as error:
                raise QSymError(f"Cannot read a term at offset {position} of '{text}': {error}") from error
            accumulated[alpha] += coefficient
            position = match.end()
        return cls(accumulated)

    def to_dict(self):
        return {"terms": [[list(alpha.parts), coefficient] for alpha, coefficient in self.terms()]}

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, tree):
        try:
            return cls({Composition(tuple(parts)): coefficient for parts, coefficient in tree["terms"]})
        except (KeyError, TypeError) as error:
            raise QSymError(f"Malformed QSym json: {tree!r}") from error

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# -- overlapping shuffle -----------------------------------------------------

class OverlapPattern(namedtuple("OverlapPattern", "f, g, n")):
    """
    A pair of strictly increasing maps f: [l] -> [n], g: [m] -> [n] whose images cover [n].

    Positions are 0-based: `f[i]` is the column of the i-th part of the left composition.
    """
    __slots__ = ()

    def weight(self, alpha, beta):
        gamma = [0] * self.n
        for i, column in enumerate(self.f):
            gamma[column] += alpha[i]
        for j, column in enumerate(self.g):
            gamma[column] += beta[j]
        return Composition(tuple(gamma))


def overlap_patterns(l, m):
    for n in range(max(l, m), l + m + 1):
        for f in combinations(range(n), l):
            image = set(f)
            # Every column f misses has to be hit by g.
            missing = [column for column in range(n) if column not in image]
            shared = m - len(missing)
            if shared < 0:
                continue
            for overlap in combinations(f, shared):
                yield OverlapPattern(f, tuple(sorted(missing + list(overlap))), n)


@lru_cache(maxsize=None)
def _oshuffle_direct(a, b):
    accumulated = defaultdict(int)
    for pattern in overlap_patterns(len(a), len(b)):
        accumulated[pattern.weight(a, b).parts] += 1
    return tuple(sorted(accumulated.items(), reverse=True))


@lru_cache(maxsize=None)
def _oshuffle_rec(a, b):
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    accumulated = defaultdict(int)
    for gamma, count in _oshuffle_rec(a[1:], b):
        accumulated[(a[0],) + gamma] += count
    for gamma, count in _oshuffle_rec(a, b[1:]):
        accumulated[(b[0],) + gamma] += count
    for gamma, count in _oshuffle_rec(a[1:], b[1:]):
        accumulated[(a[0] + b[0],) + gamma] += count
    return tuple(sorted(accumulated.items(), reverse=True))


def _element_from_parts(pairs):
    return QSymElement({Composition(parts): count for parts, count in pairs})


def oshuffle_compositions_direct(a, b):
    """ M_a M_b summed over every overlap pattern. """
    return _element_from_parts(_oshuffle_direct(_as_composition(a).parts, _as_composition(b).parts))


def oshuffle_compositions_rec(a, b):
    """ M_a M_b through the three-term first-part recurrence (memoized). """
    return _element_from_parts(_oshuffle_rec(_as_composition(a).parts, _as_composition(b).parts))


def _verify_oshuffle_enabled(verify):
    if verify is None:
        return CONFIG_INI.getboolean("qsym", "verify_oshuffle", fallback=False)
    return verify


def mul_oshuffle(p, q, verify=None):
    """
    Overlapping shuffle product, the ring product of QSym.

    :param verify: Cross-check each composition product against the recurrence.
                   None reads [qsym] verify_oshuffle from the config.
    """
    verify = _verify_oshuffle_enabled(verify)
    accumulated = defaultdict(int)
    for alpha, c in p.terms():
        for beta, d in q.terms():
            direct = _oshuffle_direct(alpha.parts, beta.parts)
            if verify and direct != _oshuffle_rec(alpha.parts, beta.parts):
                raise OshuffleMismatchError(f"Direct and recursive products of {alpha} and {beta} disagree")
            for gamma, count in direct:
                accumulated[gamma] += c * d * count
    return _element_from_parts(accumulated.items())


def mul_concat(p, q):
    """ Bilinear extension of M_a * M_b = M_{a concatenated with b}. """
    accumulated = defaultdict(int)
    for alpha, c in p.terms():
        for beta, d in q.terms():
            accumulated[alpha.parts + beta.parts] += c * d
    return _element_from_parts(accumulated.items())


def rho(p):
    return QSymElement({alpha.reverse(): c for alpha, c in p.terms()})


def leading_term(p):
    if p.is_zero():
        raise ZeroElementError("zero element has no leading term")
    alpha, coefficient = next(p.terms())
    return LeadingTerm(alpha, coefficient)


def content(p):
    """ gcd of the coefficients. """
    if p.is_zero():
        raise ZeroElementError("zero element has no content")
    return reduce(math.gcd, (abs(c) for _, c in p.terms()))


def is_primitive(p):
    return content(p) == 1


def _strip(p, side):
    """ p with the first (side=0) or last (side=-1) part removed, or None if some part there is not 1. """
    stripped = {}
    for alpha, coefficient in p.terms():
        if not alpha or alpha[side] != 1:
            return None
        stripped[Composition(alpha.parts[1:] if side == 0 else alpha.parts[:-1])] = coefficient
    return QSymElement(stripped)


def irreducible_by_lemma(p):
    """
    Certify irreducibility of M_(1) * q or q * M_(1) for a primitive q.

    A product of two non-constant elements has a leading composition whose first part is
    at least 2, so an element all of whose compositions start (or end) with 1 cannot
    factor once its content is 1.
    """
    if p.is_zero():
        raise ZeroElementError("zero element has no irreducibility certificate")
    if p.is_constant():
        raise ConstantElementError(f"constant element {p} has no irreducibility certificate")

    for side, certificate in ((0, Certificate.LEFT), (-1, Certificate.RIGHT)):
        stripped = _strip(p, side)
        if stripped is not None and is_primitive(stripped):
            return certificate
    return Certificate.INCONCLUSIVE


def coefficient_vector(p, n):
    """
    Dense degree-`n` coefficients indexed by `compositions_of(n)`. int64 while every coefficient
    fits, an object array of Python ints otherwise.
    """
    coefficients = [p.coefficient(alpha) for alpha in compositions_of(n)]
    limits = np.iinfo(np.int64)
    fits = all(limits.min <= coefficient <= limits.max for coefficient in coefficients)
    return np.array(coefficients, dtype=np.int64 if fits else object)


# -- finite-variable oracle --------------------------------------------------

class TruncatedPolynomial:
    """
    Integer polynomial in x_1..x_k with every monomial of degree > maxdeg dropped.

    Keys are exponent tuples of length k.
    """
    __slots__ = ("nvars", "maxdeg", "terms")

    def __init__(self, terms, nvars, maxdeg):
        self.nvars = nvars
        self.maxdeg = maxdeg
        self.terms = {}
        for exponents, coefficient in terms.items():
            if len(exponents) != nvars:
                raise ValueError(f"Exponent vector {exponents} does not have {nvars} entries")
            if coefficient and sum(exponents) <= maxdeg:
                self.terms[tuple(exponents)] = self.terms.get(tuple(exponents), 0) + coefficient
        self.terms = {e: c for e, c in self.terms.items() if c}

    def _check_compatible(self, other):
        if not isinstance(other, TruncatedPolynomial):
            raise TypeError(f"Expected '{TruncatedPolynomial.__qualname__}' but got '{type(other).__name__}'")
        if other.nvars != self.nvars:
            raise ValueError(f"Variable counts differ ({self.nvars} != {other.nvars})")

    def __add__(self, other):
        self._check_compatible(other)
        accumulated = dict(self.terms)
        for exponents, coefficient in other.terms.items():
            accumulated[exponents] = accumulated.get(exponents, 0) + coefficient
        return TruncatedPolynomial(accumulated, self.nvars, min(self.maxdeg, other.maxdeg))

    def __mul__(self, other):
        self._check_compatible(other)
        maxdeg = min(self.maxdeg, other.maxdeg)
        accumulated = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponents = tuple(x + y for x, y in zip(e1, e2))
                if sum(exponents) <= maxdeg:
                    accumulated[exponents] += c1 * c2
        return TruncatedPolynomial(accumulated, self.nvars, maxdeg)

    def __eq__(self, other):
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exponents, coefficient in sorted(self.terms.items(), reverse=True):
            factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exponents) if e]
            monomial = "*".join(factors)
            if not monomial:
                pieces.append(str(coefficient))
            elif coefficient == 1:
                pieces.append(monomial)
            else:
                pieces.append(f"{coefficient}*{monomial}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"TruncatedPolynomial({self})"


def expand_truncated(p, k, maxdeg):
    """
    Substitute M_alpha = sum over i_1 < ... < i_l of x_{i_1}^{a_1} ... x_{i_l}^{a_l}, using only x_1..x_k.
    """
    if k < 1:
        raise ValueError(f"Need at least one variable (k={k})")
    accumulated = defaultdict(int)
    for alpha, coefficient in p.terms():
        if alpha.weight > maxdeg or alpha.length > k:
            continue
        for indices in combinations(range(k), alpha.length):
            exponents = [0] * k
            for index, part in zip(indices, alpha.parts):
                exponents[index] = part
            accumulated[tuple(exponents)] += coefficient
    return TruncatedPolynomial(accumulated, k, maxdeg)
