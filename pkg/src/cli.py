#!/usr/bin/env python3
"""
orbitforge CLI
Diagrams, ideal generators, polarizations, dimensions and finite-field verification
for the coadjoint orbits attached to involutions.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from config_manager import ConfigManager
from constants import OUTPUT_FORMATS
from diagram import build_iterative, classify, render
from ideal_gen import dimension_summary, generator_set, orbit_dim, polarization, xsigma_point
from involution import Involution, parse_involution
from orbit_lab import OrbitLimitExceeded, OrbitReport, group_order_exponent, survey, verify
from report_store import ReportStore

logger = logging.getLogger(__name__)


def _parse_values(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(',')]
    except ValueError:
        raise ValueError(f"--values must be comma-separated integers, got {text!r}")


def _dump(data) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


def _check_n(n: int) -> int:
    if n < 2:
        raise ValueError(f"--n must be at least 2, got {n}")
    return n


class OrbitForgeCLI:
    """Command-line interface for orbitforge"""

    def __init__(self, config: Optional[ConfigManager] = None):
        self.config = config or ConfigManager()

    def _format(self, args) -> str:
        return args.format or self.config.get('output.format', 'text')

    def _sigma(self, args) -> Involution:
        return parse_involution(args.sigma, _check_n(args.n))

    def _orbit_options(self, args):
        limit = args.limit if args.limit is not None else self.config.get('orbit.limit')
        seed = args.seed if args.seed is not None else self.config.get('orbit.seed')
        samples = args.samples if args.samples is not None else self.config.get('orbit.samples')
        prime = args.prime if args.prime is not None else self.config.get('orbit.default_prime')
        if limit < 1:
            raise ValueError(f"--limit must be positive, got {limit}")
        return prime, limit, samples, seed

    def cmd_diagram(self, args) -> int:
        """Render the admissible diagram"""
        sigma = self._sigma(args)
        d = build_iterative(sigma) if args.iterative else classify(sigma)
        fmt = self._format(args)
        if fmt == 'json':
            data = d.to_dict()
            data["sigma"] = str(sigma)
            _dump(data)
            return 0

        labels = args.labels or self.config.get('output.labels', False)
        style = 'unicode' if fmt == 'unicode' else 'ascii'
        sys.stdout.write(render(d, style=style, labels=labels))
        return 0

    def cmd_generators(self, args) -> int:
        """Print the generators of the defining ideal"""
        sigma = self._sigma(args)
        values = _parse_values(args.values)
        point = xsigma_point(sigma, values) if values is not None else None
        gens = generator_set(sigma, point)

        if self._format(args) == 'json':
            _dump(gens.to_dict())
            return 0

        print(f"🧮 Ideal generators for sigma = {str(sigma) or '()'} (n = {sigma.n})")
        print("=" * 50)
        print(f"Orbit dimension: {orbit_dim(sigma)}")
        print(f"Generators: {len(gens.generators)}")
        print()
        for g in gens.generators:
            if g.kind == "D":
                print(f"  {g.label.ljust(8)} = {g.poly}   (value {g.shift})")
            else:
                print(f"  {g.label.ljust(8)} = {g.poly}")
        return 0

    def cmd_polarization(self, args) -> int:
        """Print the polarization basis"""
        sigma = self._sigma(args)
        pol = polarization(sigma)
        roots = sorted(pol.basis)

        if self._format(args) == 'json':
            _dump({
                "n": sigma.n,
                "sigma": str(sigma),
                "dim": pol.dim,
                "codim": pol.codim,
                "subalgebra": pol.is_subalgebra(),
                "isotropic": pol.is_isotropic(),
                "basis": [{"row": r.i, "col": r.j} for r in roots],
            })
            return 0

        print(f"📐 Polarization for sigma = {str(sigma) or '()'} (n = {sigma.n})")
        print("=" * 50)
        print(f"Dimension: {pol.dim}   Codimension: {pol.codim}")
        print(f"Subalgebra: {'yes' if pol.is_subalgebra() else 'no'}")
        print(f"Isotropic:  {'yes' if pol.is_isotropic() else 'no'}")
        print()
        print("Basis: " + " ".join(str(v) for v in pol.variables()))
        return 0

    def cmd_dim(self, args) -> int:
        """Print the orbit dimension"""
        sigma = self._sigma(args)
        if self._format(args) == 'json':
            summary = dimension_summary(sigma)
            data = {"n": sigma.n, "sigma": str(sigma), "dim": orbit_dim(sigma)}
            data.update(summary.to_dict())
            data["consistent"] = summary.consistent
            _dump(data)
            return 0

        print(orbit_dim(sigma))
        if args.verbose:
            for key, value in dimension_summary(sigma).to_dict().items():
                print(f"  {key.ljust(12)}: {value}")
        return 0

    def _save(self, args, reports: List[OrbitReport], command: str):
        if not args.save:
            return
        store = ReportStore(str(self.config.get_path('reports_dir')))
        path = store.save(reports, command=command)
        stream = sys.stderr if self._format(args) == 'json' else sys.stdout
        print(f"💾 Saved report to {path}", file=stream)

    def _print_report(self, report: OrbitReport):
        status = "✅ PASS" if report.passed else "❌ FAIL"
        print(f"🔬 Orbit verification for sigma = {report.sigma or '()'} (n = {report.n}, p = {report.p})")
        print("=" * 50)
        print(f"Values:        {report.values}")
        print(f"Orbit size:    {report.orbit_size} (expected {report.expected_size})")
        print(f"Group order:   {report.p}^{group_order_exponent(report.n)}")
        print(f"X_sigma hits:  {report.xsigma_count}")
        print(f"Seed:          {report.seed} ({report.samples} samples)")
        print(f"Wall time:     {report.wall_time:.3f}s")
        print()
        print("Checks:")
        for name, ok in report.checks.items():
            print(f"  {name.ljust(15)}: {'ok' if ok else 'FAILED'}")
        failed = [v["label"] for v in report.generator_verdicts if not v["ok"]]
        if failed:
            print(f"  failing generators: {', '.join(failed)}")
        print()
        print(f"Result: {status}")
        print(report.caveat)

    def cmd_verify(self, args) -> int:
        """Enumerate the orbit over F_p and check the generators"""
        sigma = self._sigma(args)
        prime, limit, samples, seed = self._orbit_options(args)
        report = verify(sigma, prime, _parse_values(args.values), limit, samples, seed)

        if self._format(args) == 'json':
            _dump(report.to_dict())
        else:
            self._print_report(report)
        self._save(args, [report], 'verify')
        return 0 if report.passed else 1

    def cmd_survey(self, args) -> int:
        """Verify every involution of S_n"""
        n = _check_n(args.n)
        prime, limit, samples, seed = self._orbit_options(args)
        reports = survey(n, prime, limit, samples, seed)
        passed = all(r.passed for r in reports)

        if self._format(args) == 'json':
            _dump({
                "n": n,
                "p": prime,
                "seed": seed,
                "passed": passed,
                "reports": [r.to_dict() for r in reports],
            })
        else:
            print(f"📊 Survey of S_{n} over F_{prime} ({len(reports)} involutions, seed {seed})")
            print("=" * 50)
            for r in reports:
                mark = "ok" if r.passed else "FAILED"
                print(f"  {(r.sigma or '()').ljust(24)} expected {str(r.expected_size).rjust(6)} "
                      f"orbit {str(r.orbit_size).rjust(6)}  {mark}")
            print()
            print(f"Result: {'✅ PASS' if passed else '❌ FAIL'}")
            print(reports[0].caveat if reports else "")
        self._save(args, reports, 'survey')
        return 0 if passed else 1

    def cmd_reports(self, args) -> int:
        """List saved reports, or show the newest one"""
        store = ReportStore(str(self.config.get_path('reports_dir')))
        as_json = self._format(args) == 'json'

        if args.latest:
            payload = store.latest()
            if as_json:
                _dump(payload)
                return 0
            if payload is None:
                print(f"No saved reports in {store.reports_dir}")
                return 0
            print(f"🗂️  Latest {payload['command']} report ({payload['created_at']})")
            print("=" * 50)
            for r in payload["reports"]:
                mark = "ok" if r["passed"] else "FAILED"
                print(f"  {(r['sigma'] or '()').ljust(24)} n = {r['n']}, p = {r['p']}, "
                      f"orbit {str(r['orbit_size']).rjust(6)}  {mark}")
            print()
            print(f"Result: {'✅ PASS' if payload['passed'] else '❌ FAIL'}")
            return 0

        files = store.list_reports()
        if as_json:
            _dump([str(path) for path in files])
            return 0
        print(f"🗂️  Saved reports in {store.reports_dir}")
        print("=" * 50)
        if not files:
            print("  (none)")
        for path in files:
            print(f"  {path.name}")
        return 0

    def cmd_config(self, args) -> int:
        """Show or change orbitforge settings"""
        if args.action == 'list':
            print("Current Configuration:")
            _dump(self.config.config)
            return 0

        if not args.key:
            raise ValueError(f"config {args.action} needs a key")

        if args.action == 'get':
            print(f"{args.key} = {self.config.get(args.key)}")
            return 0

        if args.value is None:
            raise ValueError(f"config set {args.key} needs a value")
        try:
            value = json.loads(args.value)
        except json.JSONDecodeError:
            value = args.value
        self.config.set(args.key, value)
        self.config.save()
        print(f"✓ Set {args.key} = {value} ({self.config.config_path})")
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='orbitforge',
        description='orbitforge - coadjoint orbits of the unitriangular group attached to involutions',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    subparsers = parser.add_subparsers(dest='command', help='Command to run')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, required=True, help='Size of the matrices (n >= 2)')
    common.add_argument('--format', choices=OUTPUT_FORMATS, help='Output format (default: text)')
    common.add_argument('--verbose', '-v', action='store_true', help='Debug logging on stderr')

    with_sigma = argparse.ArgumentParser(add_help=False)
    with_sigma.add_argument('--sigma', default='', help='Involution in cycle notation, e.g. "(1,4)(2,7)(3,6)"')

    orbit = argparse.ArgumentParser(add_help=False)
    orbit.add_argument('--prime', type=int, help='Prime field for the orbit (2, 3 or 5)')
    orbit.add_argument('--seed', type=int, help='Seed for the random group elements')
    orbit.add_argument('--limit', type=int, help='Largest orbit to enumerate')
    orbit.add_argument('--samples', type=int, help='Random group elements for the invariance check')
    orbit.add_argument('--save', action='store_true', help='Save the report under the reports directory')

    diagram_parser = subparsers.add_parser(
        'diagram', parents=[common, with_sigma], help='Render the admissible diagram'
    )
    diagram_parser.add_argument('--labels', action='store_true', help='Print row and column numbers')
    diagram_parser.add_argument('--iterative', action='store_true', help='Use the fill procedure instead of the closed form')

    generators_parser = subparsers.add_parser(
        'generators', parents=[common, with_sigma], help='Generators of the defining ideal'
    )
    generators_parser.add_argument('--values', help='Comma-separated nonzero values f(y_xi), one per transposition')

    subparsers.add_parser('polarization', parents=[common, with_sigma], help='Polarization basis')
    subparsers.add_parser('dim', parents=[common, with_sigma], help='Orbit dimension')

    verify_parser = subparsers.add_parser(
        'verify', parents=[common, with_sigma, orbit], help='Verify the generators on the orbit over F_p'
    )
    verify_parser.add_argument('--values', help='Comma-separated nonzero values f(y_xi), one per transposition')

    subparsers.add_parser('survey', parents=[common, orbit], help='Verify every involution of S_n')

    reports_parser = subparsers.add_parser('reports', help='List saved verification reports')
    reports_parser.add_argument('--latest', action='store_true', help='Show the newest report')
    reports_parser.add_argument('--format', choices=OUTPUT_FORMATS, help='Output format (default: text)')
    reports_parser.add_argument('--verbose', '-v', action='store_true', help='Debug logging on stderr')

    config_parser = subparsers.add_parser('config', help='Show or change settings')
    config_parser.add_argument('action', choices=['get', 'set', 'list'], help='Config action')
    config_parser.add_argument('key', nargs='?', help='Config key (dot notation)')
    config_parser.add_argument('value', nargs='?', help='Config value (JSON or plain text)')
    config_parser.add_argument('--verbose', '-v', action='store_true', help='Debug logging on stderr')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if not args.command:
        parser.print_help()
        return 2

    try:
        cli = OrbitForgeCLI()
        level = 'DEBUG' if args.verbose else cli.config.get('logging.level', 'WARNING')
        logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING),
                            format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)

        command_map = {
            'diagram': cli.cmd_diagram,
            'generators': cli.cmd_generators,
            'polarization': cli.cmd_polarization,
            'dim': cli.cmd_dim,
            'verify': cli.cmd_verify,
            'survey': cli.cmd_survey,
            'reports': cli.cmd_reports,
            'config': cli.cmd_config,
        }
        return command_map[args.command](args)
    except (ValueError, OrbitLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
