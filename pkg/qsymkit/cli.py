"""
Command-line interface: `qsymkit <command> ...`.

Exit codes: 0 on success or a passing verification, 1 on a failing verification or an
aborted suite, 2 on bad input (parse errors, exceeded bounds, invalid arguments).
"""
import argparse
import json
import logging
import sys

from qsymkit import config
from qsymkit.classes import enumerate_all_posets, enumerate_njoinfree, enumerate_rooted_trees
from qsymkit.formats import dump_poset, format_rooted_tree, read_family, read_posets
from qsymkit.partitions import gamma, gamma_strict, gamma_weak
from qsymkit.poset import is_isomorphic
from qsymkit.qsym import QSymElement, mul_concat, mul_oshuffle
from qsymkit.qsymkit_types import PosetClass
from qsymkit.verification import (CounterexampleVerification, InjectivityVerification, PropertyVerification,
                                  VerificationError)

log = logging.getLogger(__name__)

LABELINGS = ("strict", "weak", "from-file")


def configure_logging(level=None):
    if level is None:
        level = config.CONFIG_INI.get("logging", "level", fallback="WARNING")
    fmt = config.CONFIG_INI.get("logging", "format", raw=True, fallback=logging.BASIC_FORMAT)
    logging.basicConfig(level=level.upper(), format=fmt, force=True)


def _gamma_of(entry, labeling):
    if labeling == "strict":
        return gamma_strict(entry.poset)
    elif labeling == "weak":
        return gamma_weak(entry.poset)
    if entry.labeled is None:
        raise ValueError(f"poset '{entry.name}' has no labels, 'from-file' needs a 'label' line per element")
    return gamma(entry.labeled)


def _emit(args, text, tree):
    print(json.dumps(tree, ensure_ascii=False, indent=2) if args.json else text)


# -- commands ----------------------------------------------------------------

def cmd_gamma(args):
    entries = read_posets(args.input)
    if not entries:
        raise ValueError(f"no posets in '{args.input}'")
    results = [(entry, _gamma_of(entry, args.labeling)) for entry in entries]
    if len(results) == 1:
        text = str(results[0][1])
    else:
        text = "\n".join(f"{entry.name}: {value}" for entry, value in results)
    tree = [{"name": entry.name, "labeling": args.labeling, "series": str(value), **value.to_dict()}
            for entry, value in results]
    _emit(args, text, tree if len(tree) > 1 else tree[0])
    return 0


def cmd_mul(args):
    left, right = QSymElement.parse(args.left), QSymElement.parse(args.right)
    product = mul_oshuffle(left, right) if args.op == "oshuffle" else mul_concat(left, right)
    _emit(args, str(product), {"op": args.op, "series": str(product), **product.to_dict()})
    return 0


def cmd_compare(args):
    entries = [entry for path in args.inputs for entry in read_posets(path)]
    if len(entries) != 2:
        raise ValueError(f"compare needs exactly two posets, got {len(entries)}")
    first, second = entries
    values = [_gamma_of(entry, args.labeling) for entry in entries]
    equal = values[0] == values[1]
    isomorphic = is_isomorphic(first.poset, second.poset) if first.poset.n == second.poset.n else False
    text = "\n".join([f"{first.name}: {values[0]}",
                      f"{second.name}: {values[1]}",
                      f"{args.labeling} functions: {'equal' if equal else 'different'}",
                      f"isomorphic: {'yes' if isomorphic else 'no'}"])
    _emit(args, text, {"labeling": args.labeling, "equal": equal, "isomorphic": isomorphic,
                       "series": {first.name: str(values[0]), second.name: str(values[1])}})
    return 0


def cmd_enumerate(args):
    poset_class = PosetClass(args.poset_class)
    if poset_class is PosetClass.ROOTED_TREES:
        trees = enumerate_rooted_trees(args.n)
        _emit(args, "\n".join(format_rooted_tree(tree) for tree in trees),
              {"class": poset_class.class_name, "n": args.n, "trees": [tree.encoding for tree in trees]})
        return 0

    if poset_class is PosetClass.NJOINFREE:
        posets = enumerate_njoinfree(args.n, jobs=args.jobs, unbounded=args.unbounded)
    else:
        posets = enumerate_all_posets(args.n, jobs=args.jobs)
    names = [f"{poset_class.class_name}-{args.n}-{index}" for index in range(len(posets))]
    _emit(args, "\n".join(dump_poset(p, name=name) for p, name in zip(posets, names)),
          {"class": poset_class.class_name, "n": args.n,
           "posets": [{"name": name, "elements": p.n, "covers": [list(cover) for cover in p.covers]}
                      for p, name in zip(posets, names)]})
    return 0


def cmd_count(args):
    counts = {n: len(enumerate_njoinfree(n, jobs=args.jobs, unbounded=args.unbounded))
              for n in range(1, args.nmax + 1)}
    _emit(args, "\n".join(f"n={n}: {count}" for n, count in counts.items()),
          {"class": "njoinfree", "counts": {str(n): count for n, count in counts.items()}})
    return 0


def cmd_verify(args):
    common = {"jobs": args.jobs, "data_log_dir": args.data_log}
    if args.suite == "injectivity":
        entries = read_family(args.input) if args.input else None
        verification = InjectivityVerification(poset_class=args.poset_class, nmax=args.nmax, weak=args.weak,
                                               entries=entries, unbounded=args.unbounded, **common)
    elif args.suite == "counterexample":
        verification = CounterexampleVerification(**common)
    else:
        verification = PropertyVerification(seed=args.seed, budget=args.budget, **common)

    report = verification.start()
    print(report.to_json(indent=2) if args.json else report.format_text())
    return 0 if report.passed else 1


# -- parser ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config .ini file replacing the packaged one")
    common.add_argument("--log-level", help="logging level, defaults to [logging] level")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=None, help="worker processes, defaults to [verification] jobs")
    common.add_argument("--data-log", metavar="DIR", default=None, help="write an ASDF data log into DIR")
    common.add_argument("--unbounded", action="store_true", help="lift the configured size bounds")

    parser = argparse.ArgumentParser(prog="qsymkit", description="Quasisymmetric functions of labeled posets.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("gamma", parents=[common], help="generating function of each poset in a file")
    sub.add_argument("input", help="poset file")
    sub.add_argument("--labeling", choices=LABELINGS, default="strict")
    sub.set_defaults(func=cmd_gamma)

    sub = commands.add_parser("mul", parents=[common], help="multiply two elements, e.g. '2M_11 + M_2'")
    sub.add_argument("left")
    sub.add_argument("right")
    sub.add_argument("--op", choices=("oshuffle", "concat"), default="oshuffle")
    sub.set_defaults(func=cmd_mul)

    sub = commands.add_parser("compare", parents=[common], help="compare the functions of two posets")
    sub.add_argument("inputs", nargs="+", help="one file holding two posets, or two files")
    sub.add_argument("--labeling", choices=LABELINGS, default="strict")
    sub.set_defaults(func=cmd_compare)

    sub = commands.add_parser("enumerate", parents=[common], help="list a family up to isomorphism")
    sub.add_argument("--class", dest="poset_class", default="njoinfree",
                     choices=[name for item in PosetClass for name in (item.class_name,) + item.aliases])
    sub.add_argument("--n", "--nmax", dest="n", type=int, required=True, help="size")
    sub.set_defaults(func=cmd_enumerate)

    sub = commands.add_parser("count", parents=[common], help="count (N, bowtie)-free posets per size")
    sub.add_argument("family", choices=("njoinfree",))
    sub.add_argument("--nmax", type=int, default=8)
    sub.set_defaults(func=cmd_count)

    sub = commands.add_parser("verify", parents=[common], help="run a verification suite")
    sub.add_argument("suite", choices=("injectivity", "counterexample", "properties"))
    sub.add_argument("--class", dest="poset_class", default="rooted-trees",
                     choices=[name for item in PosetClass for name in (item.class_name,) + item.aliases])
    sub.add_argument("--nmax", type=int, default=None)
    sub.add_argument("--weak", action="store_true", help="also check the weak function")
    sub.add_argument("--input", default=None, help="poset or rooted tree file replacing --class")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--budget", type=int, default=None)
    sub.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.config:
            config.load_config_ini(args.config)
        configure_logging(args.log_level)
        if args.jobs is None:
            args.jobs = config.CONFIG_INI.getint("verification", "jobs")
        return args.func(args)
    except (ValueError, FileNotFoundError) as error:
        print(f"qsymkit: error: {error}", file=sys.stderr)
        return 2
    except VerificationError as error:
        log.exception(error)
        print(f"qsymkit: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
