import argparse
import dataclasses
import logging
import pathlib
import sys

from transchromatic import (
    __version__,
    characters,
    groupoids,
    linsys,
    loops,
    spans,
    suite,
    translator,
    utils,
)
from transchromatic import load_config
from transchromatic.errors import FormatError, GroupoidError

logger = logging.getLogger(__name__)

PROG = "transchromatic"


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{PROG}: {message}\n")


@dataclasses.dataclass
class Output:
    plain: str
    data: dict
    status: int = 0


def _verdict(holds):
    return "PASS" if holds else "FAIL"


def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}")


def _groupoid_document(document):
    if isinstance(document, dict) and any(
        kind.value in document for kind in translator.GroupKind
    ):
        return groupoids.delooping(translator.to_group(document))
    return translator.to_groupoid(document)


def _components(grpd):
    return [aut.order for _, aut in grpd.skeleton.components]


def cardinality_command(document, args, config):
    grpd = _groupoid_document(document)
    value = translator.format_rational(groupoids.cardinality(grpd))
    return Output(
        value,
        {"cardinality": value, "automorphism_orders": _components(grpd)},
    )


def loop_command(document, args, config):
    grpd = _groupoid_document(document)
    if args.p is None:
        looped = grpd
        for _ in range(args.h):
            looped = loops.free_loop(looped).underlying
    else:
        looped = loops.iterated_p_free_loop(
            grpd, loops.PAdicLoopParams(args.p, args.h)
        )
    value = translator.format_rational(groupoids.cardinality(looped))
    data = {
        "objects": len(looped.objects),
        "morphisms": len(looped.morphisms),
        "components": len(looped.skeleton),
        "automorphism_orders": _components(looped),
        "cardinality": value,
    }
    plain = "\n".join(
        f"{key}: {data[key]}"
        for key in ("objects", "morphisms", "components", "cardinality")
    )
    return Output(plain, data)


def span_command(document, args, config):
    m = spans.linearize(translator.to_span(document))
    return Output(
        translator.plain_matrix(m),
        {"rows": m.rows, "cols": m.cols, "matrix": translator.web_matrix(m)},
    )


def norm_check_command(document, args, config):
    f = translator.to_map(translator._field(document, "map", "Document"))
    system = translator.to_system(
        translator._field(document, "system", "Document"), f.source
    )
    structural = linsys.norm_structural(f, system)
    _, comparison = linsys.dualizing_map(f, system)
    direct = linsys.norm_direct(f, system)
    identified = linsys.compose_system_maps(
        structural, linsys.pushforward_left_map(f, comparison.inverse())
    )
    holds = (
        structural.is_invertible()
        and comparison.is_invertible()
        and identified == direct
    )
    components = [
        {"object": y, "norm": translator.web_matrix(direct.components[y])}
        for y in f.target.skeleton.representatives
    ]
    lines = [_verdict(holds)] + [
        f"object {c['object']}: "
        + translator.plain_matrix(direct.components[c["object"]])
        for c in components
    ]
    return Output(
        "\n".join(lines),
        {"verdict": _verdict(holds), "components": components},
        status=0 if holds else 4,
    )


def bc_check_command(document, args, config):
    square = translator.to_square(document)
    system = translator.to_system(
        translator._field(document, "system", "Document"), square.f.source
    )
    shriek = linsys.beck_chevalley_shriek(square, system)
    star = linsys.beck_chevalley_star(square, system)
    holds = shriek.is_invertible() and star.is_invertible()
    components = []
    for y in square.g.source.skeleton.representatives:
        components.append(
            {
                "object": y,
                "shriek": translator.web_matrix(shriek.components[y]),
                "star": translator.web_matrix(star.components[y]),
            }
        )
    lines = [_verdict(holds)]
    for y in square.g.source.skeleton.representatives:
        lines.append(
            f"object {y}: shriek "
            f"{translator.plain_matrix(shriek.components[y])}; star "
            f"{translator.plain_matrix(star.components[y])}"
        )
    return Output(
        "\n".join(lines),
        {"verdict": _verdict(holds), "components": components},
        status=0 if holds else 4,
    )


def induce_check_command(document, args, config):
    group, elements = translator.to_subgroup(
        translator._field(document, "subgroup", "Document")
    )
    inclusion, subgroup = characters.inclusion_map(group, elements)
    rep = translator.to_rep(
        translator._field(document, "rep", "Document"), subgroup
    )
    if args.p is None:
        report = characters.verify_induction_square(inclusion, rep)
    else:
        report = characters.p_typical_character_square(inclusion, rep, args.p)
    values = [translator.format_rational(v) for v in report.induced]
    integrated = [translator.format_rational(v) for v in report.integrated]
    plain = "\n".join(
        [
            _verdict(report.holds),
            "classes: " + " ".join(str(g) for g in report.classes),
            "values: " + " ".join(values),
        ]
    )
    return Output(
        plain,
        {
            "verdict": _verdict(report.holds),
            "classes": report.classes,
            "induced": values,
            "integrated": integrated,
        },
        status=0 if report.holds else 4,
    )


def chrom_card_command(document, args, config):
    grpd = _groupoid_document(document)
    if args.t is None:
        value = characters.chromatic_cardinality(grpd, args.p, args.n)
    else:
        value = characters.transchromatic_cardinality(
            grpd, args.p, args.n, args.t
        )
    text = translator.format_rational(value)
    return Output(text, {"cardinality": text, "p": args.p, "n": args.n})


def suite_command(document, args, config):
    seed = config["suite_seed"] if args.seed is None else args.seed
    results = suite.run_suite(
        seed=seed,
        span_pairs=config["suite_spans"],
        parallelism=config["parallelism"],
        only=args.only,
        bound=config["isomorphism_bound"],
    )
    holds = all(r.passed for r in results)
    width = max((len(r.name) for r in results), default=0)
    lines = [
        f"{_verdict(r.passed)}  {r.name.ljust(width)}  {r.cases}"
        for r in results
    ]
    for r in results:
        lines.extend(f"  {r.name}: {failure}" for failure in r.failures)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return Output(
        "\n".join(lines),
        {
            "verdict": _verdict(holds),
            "checks": [dataclasses.asdict(r) for r in results],
        },
        status=0 if holds else 4,
    )


COMMANDS = {
    "cardinality": cardinality_command,
    "loop": loop_command,
    "span": span_command,
    "norm-check": norm_check_command,
    "bc-check": bc_check_command,
    "induce-check": induce_check_command,
    "chrom-card": chrom_card_command,
    "suite": suite_command,
}


def build_parser():
    parser = ArgumentParser(
        prog=PROG, description="Exact computations with finite groupoids"
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="configuration file")
    parser.add_argument("--format", choices=("plain", "json"), default=None)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="count", default=0)
    verbosity.add_argument("-q", "--quiet", action="store_true")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        if name != "suite":
            sub.add_argument("input", nargs="?", help="JSON file, - for stdin")
        if name in ("loop", "induce-check"):
            sub.add_argument("--p", type=int, default=None)
        if name == "loop":
            sub.add_argument("--h", type=int, default=1)
        if name == "chrom-card":
            sub.add_argument("--p", type=int, required=True)
            sub.add_argument("--n", type=int, required=True)
            sub.add_argument("--t", type=int, default=None)
        if name == "suite":
            sub.add_argument("--seed", type=int, default=None)
            sub.add_argument("--only", action="append", default=None)
    return parser


def setup_logging(verbose, quiet):
    if quiet:
        level = logging.CRITICAL
    else:
        levels = [logging.WARNING, logging.INFO, logging.DEBUG, utils.TRACE]
        level = levels[min(verbose, len(levels) - 1)]
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)-8s %(name)s %(message)s",
    )


def run(args, stdout=None):
    stdout = stdout or sys.stdout
    config = load_config(args.config)
    output_format = args.format or config["output_format"]
    if args.command == "suite":
        document = None
    else:
        document = translator.load_document(_read_input(args.input))
    logger.info(f"Running {args.command}")
    with utils.time_logger(args.command, level=logging.INFO):
        output = COMMANDS[args.command](document, args, config)
    if output_format == "json":
        stdout.write(translator.dump(output.data) + "\n")
    else:
        stdout.write(output.plain + "\n")
    return output.status


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.quiet)
    try:
        return run(args)
    except GroupoidError as exc:
        sys.stderr.write(f"{PROG}: {exc}\n")
        return exc.exit_status
    except IndexError as exc:
        sys.stderr.write(f"{PROG}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
