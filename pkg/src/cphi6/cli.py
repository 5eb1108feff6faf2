"""Command line: expand eta quotients and run the verification suites.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .etaq import EtaParseError, EtaQuotient, PochProduct, expand_eta, expand_poch
from .report import Report, timed
from .series import EXACT

log = logging.getLogger("cphi6")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# cheap structural suites first so that breakage shows up before the long scans
SUITE_ORDER = ("group1", "modeq", "arrays", "appendix", "tower", "lemma", "theorem", "known")
CACHE_ENV = "CPHI6_CACHE_DIR"


class UsageError(Exception):
    pass


@dataclass
class Config:
    precision: int = 200
    mod_exp: int = 12
    alpha_max: int = 4
    n_max: int = 50
    m_max: int = 30
    cache_dir: Path | None = None
    output: str = "text"

    def validate(self) -> None:
        if self.precision < 32:
            raise UsageError(f"--precision must be >= 32, got {self.precision}")
        if self.mod_exp < 4:
            raise UsageError(f"--mod-exp must be >= 4, got {self.mod_exp}")
        if self.alpha_max < 1:
            raise UsageError(f"--alpha-max must be >= 1, got {self.alpha_max}")
        if self.n_max < 0:
            raise UsageError(f"--n-max must be >= 0, got {self.n_max}")
        if self.m_max < 3:
            raise UsageError(f"--m-max must be >= 3, got {self.m_max}")
        if self.output not in ("text", "json"):
            raise UsageError(f"unknown output format {self.output!r}")


def _arrays(config: Config):
    from .tower import FundArrays

    if config.cache_dir is None:
        return FundArrays()
    return FundArrays(Path(config.cache_dir) / "arrays.json")


def run_suite(name: str, config: Config, arrays=None) -> Report:
    from . import frob6, reduce, tower

    arrays = arrays if arrays is not None else _arrays(config)
    N = config.precision
    if name == "group1":
        return reduce.verify_group1(N)
    if name == "modeq":
        return tower.check_modeq(N)
    if name == "appendix":
        report = Report("appendix")
        with timed(report):
            report.extend(reduce.verify_appendix_qseries(N))
            report.extend(reduce.rediscover_appendix(N))
        return report
    if name == "arrays":
        report = Report("arrays")
        with timed(report):
            report.extend(tower.check_array_bounds(10, config.m_max, 15, arrays))
            report.extend(tower.check_divisibility_recurrences(config.m_max, arrays))
            report.extend(reduce.check_array_duality(arrays=arrays))
        return report
    if name == "tower":
        report = Report("tower")
        with timed(report):
            report.extend(tower.check_L1())
            report.extend(tower.check_L_cphi_link(1, 120))
            report.extend(tower.check_L_cphi_link(2, 120))
            report.extend(tower.check_cross_route(3, 20))
            report.extend(reduce.check_worked_examples(arrays=arrays, reference="corrected"))
        return report
    if name == "lemma":
        return tower.check_main_lemma(config.alpha_max, config.n_max, arrays)
    if name == "theorem":
        need = frob6.theorem_modulus_exponent(config.alpha_max)
        if config.mod_exp < need:
            raise UsageError(f"--mod-exp {config.mod_exp} is below the modulus exponent {need}")
        return frob6.check_theorem(config.alpha_max, config.n_max, config.mod_exp)
    if name == "known":
        return frob6.check_known_congruences(n_max=max(config.n_max, 0))
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(suite: str, config: Config) -> tuple[Report, int]:
    config.validate()
    arrays = _arrays(config)
    if suite == "all":
        report = Report("all")
        with timed(report):
            for name in SUITE_ORDER:
                log.info("running suite %s", name)
                sub = run_suite(name, config, arrays)
                for check in sub.checks:
                    check.id = f"{name}/{check.id}"
                report.checks.extend(sub.checks)
    else:
        report = run_suite(suite, config, arrays)
    if arrays.cache_path is not None:
        arrays.save()
    return report, EXIT_PASS if report.passed else EXIT_FAIL


def cmd_expand(text: str, n: int, bare_product: bool = False, out=None) -> int:
    """Print the first n coefficients of an eta quotient, one `exponent: coefficient` per line."""
    try:
        eq = EtaQuotient.parse(text)
    except EtaParseError as exc:
        raise UsageError(str(exc)) from exc
    if bare_product:
        pp = PochProduct(tuple((1, m, m, e) for m, e in eq.factors))
        f = expand_poch(pp, EXACT, n)
        start = 0
    else:
        order = eq.q_order()
        if order.denominator != 1:
            raise UsageError(f"q-prefactor q^({order}) is not integral; "
                             "use --bare-product to expand the product part only")
        start = int(order)
        f = expand_eta(eq, EXACT, start + n)
    out = sys.stdout if out is None else out
    for e in range(start, start + n):
        print(f"{e}: {f[e]}", file=out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cphi6", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print the q-expansion of an eta quotient")
    p.add_argument("quotient", help="comma-separated n:e pairs, e.g. 12:4,2:2,6:-2,4:-4")
    p.add_argument("--n", type=int, default=20, help="number of coefficients (default 20)")
    p.add_argument("--bare-product", action="store_true",
                   help="drop the q^(sum n e / 24) prefactor and expand the product only")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_ORDER + ("all",))
    p.add_argument("--precision", type=int, default=Config.precision, help="q-precision N (>= 32)")
    p.add_argument("--mod-exp", type=int, default=Config.mod_exp, help="work modulo 3^K (K >= 4)")
    p.add_argument("--alpha-max", type=int, default=Config.alpha_max, help="deepest tower level")
    p.add_argument("--n-max", type=int, default=Config.n_max, help="largest n checked")
    p.add_argument("--m-max", type=int, default=Config.m_max, help="largest m for array checks")
    p.add_argument("--cache-dir", type=Path, default=None,
                   help=f"directory for the array cache (default: ${CACHE_ENV} if set)")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "expand":
            if args.n < 1:
                raise UsageError(f"--n must be positive, got {args.n}")
            return cmd_expand(args.quotient, args.n, args.bare_product)
        cache_dir = args.cache_dir
        if cache_dir is None and os.environ.get(CACHE_ENV):
            cache_dir = Path(os.environ[CACHE_ENV])
        config = Config(args.precision, args.mod_exp, args.alpha_max, args.n_max, args.m_max,
                        cache_dir, "json" if args.json else "text")
        report, code = cmd_verify(args.suite, config)
    except UsageError as exc:
        print(f"cphi6: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.dumps() if config.output == "json" else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
