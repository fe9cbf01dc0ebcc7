"""
Text formats.

Posets, one block per poset, blocks separated by blank lines or started by a `poset` line:

    poset <name>
    elements <n>
    cover <u> <v>     # v covers u, 0-based
    label <u> <k>     # optional, all-or-nothing

Rooted trees as nested parentheses, e.g. "(()())" is a root with two leaves.
"""
import logging

from qsymkit.classes import RootedTree, rooted_tree_to_poset
from qsymkit.poset import LabeledPoset, NotAPartialOrderError, Poset
from qsymkit.qsymkit_types import PosetEntry

log = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class _PendingPoset:
    def __init__(self, name, lineno):
        self.name = name
        self.lineno = lineno
        self.n = None
        self.covers = []
        self.labels = {}

    def finish(self):
        if self.n is None:
            raise ParseError(self.lineno, f"poset '{self.name}' has no 'elements' line")
        try:
            poset = Poset.from_covers(self.n, self.covers)
        except NotAPartialOrderError as error:
            raise ParseError(self.lineno, f"poset '{self.name}' is {error}") from error
        labeled = None
        if self.labels:
            if sorted(self.labels) != list(range(self.n)) or sorted(self.labels.values()) != list(range(1, self.n + 1)):
                raise ParseError(self.lineno, f"labels of poset '{self.name}' are not a bijection onto 1..{self.n}")
            labeled = LabeledPoset(poset, [self.labels[v] for v in range(self.n)])
        return PosetEntry(self.name, poset, labeled)


def _ints(tokens, lineno, count):
    if len(tokens) != count:
        raise ParseError(lineno, f"'{tokens[0] if tokens else ''}' expects {count - 1} arguments")
    try:
        return [int(token) for token in tokens[1:]]
    except ValueError as error:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens[1:])}") from error


def parse_posets(text):
    """
    Read every poset in `text`.

    :return: list of PosetEntry(name, poset, labeled), `labeled` being None without labels.
    """
    entries = []
    pending = None

    def _close():
        nonlocal pending
        if pending is not None:
            entries.append(pending.finish())
            pending = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            if not raw.strip():
                _close()
            continue

        keyword = tokens[0]
        if keyword == "poset":
            _close()
            name = " ".join(tokens[1:]) or f"poset{len(entries)}"
            pending = _PendingPoset(name, lineno)
            continue

        if pending is None:
            pending = _PendingPoset(f"poset{len(entries)}", lineno)

        if keyword == "elements":
            (n,) = _ints(tokens, lineno, 2)
            if pending.n is not None:
                raise ParseError(lineno, "duplicate 'elements' line")
            if n < 0:
                raise ParseError(lineno, f"element count must be non-negative, got {n}")
            pending.n = n
        elif keyword in ("cover", "label"):
            if pending.n is None:
                raise ParseError(lineno, f"'{keyword}' before 'elements'")
            u, v = _ints(tokens, lineno, 3)
            if not 0 <= u < pending.n:
                raise ParseError(lineno, f"element {u} outside 0..{pending.n - 1}")
            if keyword == "cover":
                if not 0 <= v < pending.n:
                    raise ParseError(lineno, f"element {v} outside 0..{pending.n - 1}")
                if (u, v) in pending.covers:
                    raise ParseError(lineno, f"duplicate cover {u} {v}")
                pending.covers.append((u, v))
            else:
                if u in pending.labels:
                    raise ParseError(lineno, f"element {u} labeled twice")
                pending.labels[u] = v
        else:
            raise ParseError(lineno, f"unknown directive '{keyword}'")
    _close()
    return entries


def read_posets(path):
    with open(path, encoding="utf-8") as stream:
        entries = parse_posets(stream.read())
    log.debug(f"Read {len(entries)} posets from '{path}'.")
    return entries


def dump_poset(poset, name="poset", omega=None):
    """
    Render a poset (or LabeledPoset, or PosetEntry) in the poset text format.
    """
    if isinstance(poset, PosetEntry):
        name = poset.name
        omega = poset.labeled.omega if poset.labeled is not None else None
        poset = poset.poset
    elif isinstance(poset, LabeledPoset):
        omega = poset.omega
        poset = poset.poset
    if not isinstance(poset, Poset):
        raise TypeError(f"Expected 'Poset' not '{type(poset).__name__}'")

    lines = [f"poset {name}", f"elements {poset.n}"]
    lines += [f"cover {u} {v}" for u, v in poset.covers]
    if omega is not None:
        lines += [f"label {v} {label}" for v, label in enumerate(omega)]
    return "\n".join(lines) + "\n"


def parse_rooted_tree(text, lineno=1):
    """ Read a nested parenthesis tree such as "(()())". """
    text = "".join(text.split())
    if not text:
        raise ParseError(lineno, "empty rooted tree")
    stack = []
    root = None
    for position, char in enumerate(text):
        if char == "(":
            if root is not None:
                raise ParseError(lineno, f"text continues after the root closes at column {position + 1}")
            stack.append([])
        elif char == ")":
            if not stack:
                raise ParseError(lineno, f"unbalanced ')' at column {position + 1}")
            tree = RootedTree(stack.pop())
            if stack:
                stack[-1].append(tree)
            else:
                root = tree
        else:
            raise ParseError(lineno, f"unexpected character '{char}' at column {position + 1}")
    if stack or root is None:
        raise ParseError(lineno, "unbalanced '('")
    return root


def format_rooted_tree(tree):
    return tree.encoding


def parse_rooted_trees(text):
    """ One tree per non-blank line, `#` comments allowed. """
    trees = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            trees.append(parse_rooted_tree(line, lineno))
    return trees


def rooted_tree_to_poset_text(tree, name=None):
    if isinstance(tree, str):
        tree = parse_rooted_tree(tree)
    return dump_poset(rooted_tree_to_poset(tree), name=name or f"tree {tree.encoding}")


def read_family(path):
    """
    Read a file of posets, or of rooted trees when its first directive starts with '('.
    """
    with open(path, encoding="utf-8") as stream:
        text = stream.read()
    first = next((line.split("#", 1)[0].strip() for line in text.splitlines()
                  if line.split("#", 1)[0].strip()), "")
    if first.startswith("("):
        return [PosetEntry(f"tree {tree.encoding}", rooted_tree_to_poset(tree), None) for tree in parse_rooted_trees(text)]
    return parse_posets(text)

