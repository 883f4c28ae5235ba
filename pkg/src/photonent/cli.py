"""
photon-ent: entanglement of single photons and photon pairs behind a beam splitter

Command line front end
======================
Sweeps that tabulate the entanglement curves as CSV, and a self check against the
closed forms.

:maturity:      new
:depends:       numpy scipy
:platform:      All

Exit codes: 0 success, 1 failed check, 2 usage error.

CLI Example:

.. code-block:: bash

    photon-ent single --sigma 1 --sweep 0:3:0.1 --out single.csv
    photon-ent two --mixed --sigma 0.5 --grid-n 32
    photon-ent check
"""
import argparse
import csv
import dataclasses
import functools
import logging
import multiprocessing
import sys
from typing import Optional
from typing import Tuple

import numpy as np

from photonent import __version__
from photonent import checks
from photonent import fockspace
from photonent import pairsource
from photonent import reference
from photonent import splitter
from photonent import wavepacket
from photonent.exceptions import PhotonEntError

# Globals
log = logging.getLogger(__name__)

CSV_MAGIC = "# photon-ent v1"
LOG_FORMAT = "[%(levelname)-8s] %(name)s: %(message)s"
LOG_LEVELS = ("debug", "info", "warning", "error")

COMMANDS = ("single", "two", "vacuum", "purity-scan", "filter", "check")

SWEEP_SIGMA = (0.1, 3.0, 0.1)
SWEEP_SIGMA_TAU = (0.0, 3.0, 0.1)
SWEEP_P = (0.0, 1.0, 0.05)


@dataclasses.dataclass
class RunConfig:
    """
    All parameters of a run. Defaults are overridden by a ``--config`` file, which is
    overridden by explicit flags.
    """

    command: str = "check"
    sigma: float = 1.0
    sigma_tau: float = 1.0
    p: float = 0.5
    grid_n: int = 64
    tau_n: int = 41
    cutoff: float = 2.0
    tau_cutoff: float = 6.0
    sweep: Optional[Tuple[float, float, float]] = None
    mixed: bool = False
    out: Optional[str] = None
    format: str = "csv"
    jobs: int = 1
    log_level: str = "warning"

    def validate(self):
        problems = []
        if self.command not in COMMANDS:
            problems.append(f"unknown command {self.command!r}")
        if self.grid_n < 8:
            problems.append(f"grid-n must be >= 8, got {self.grid_n}")
        if self.tau_n < 3 or self.tau_n % 2 == 0:
            problems.append(f"tau-n must be odd and >= 3, got {self.tau_n}")
        if not self.cutoff > 0:
            problems.append(f"cutoff must be > 0, got {self.cutoff}")
        if not self.tau_cutoff > 0:
            problems.append(f"tau-cutoff must be > 0, got {self.tau_cutoff}")
        if not self.sigma > 0:
            problems.append(f"sigma must be > 0, got {self.sigma}")
        if self.sigma_tau < 0:
            problems.append(f"sigma-tau must be >= 0, got {self.sigma_tau}")
        if not 0.0 <= self.p <= 1.0:
            problems.append(f"p must lie in [0, 1], got {self.p}")
        if self.jobs < 1:
            problems.append(f"jobs must be >= 1, got {self.jobs}")
        if self.log_level.lower() not in LOG_LEVELS:
            problems.append(f"unknown log level {self.log_level!r}")
        if self.format != "csv":
            problems.append(f"unsupported format {self.format!r}")
        if self.sweep is not None:
            low, high, step = self.sweep
            if not low < high or not step > 0:
                problems.append(f"sweep needs lo < hi and step > 0, got {low}:{high}:{step}")
        if problems:
            msg = "Invalid configuration: " + "; ".join(problems)
            log.error(msg)
            raise ConfigError(msg)
        return self

    def grid(self):
        return wavepacket.FrequencyGrid.symmetric(self.cutoff, self.grid_n)

    def jitter(self, sigma_tau=None):
        sigma_tau = self.sigma_tau if sigma_tau is None else sigma_tau
        return wavepacket.JitterModel(sigma_tau, self.tau_n, self.tau_cutoff)

    def sweep_points(self, default):
        low, high, step = self.sweep or default
        count = int(round((high - low) / step)) + 1
        return low + step * np.arange(count)


class ConfigError(PhotonEntError):
    """
    Bad flags or configuration file content.
    """


def parse_sweep(text):
    """
    ``lo:hi:step`` to a float triple.
    """
    try:
        low, high, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(  # pylint: disable=raise-missing-from
            f"sweep must look like lo:hi:step, got {text!r}"
        )
    return low, high, step


def _parse_bool(text):
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CONVERTERS = {
    "sigma": float,
    "sigma_tau": float,
    "p": float,
    "grid_n": int,
    "tau_n": int,
    "cutoff": float,
    "tau_cutoff": float,
    "sweep": parse_sweep,
    "mixed": _parse_bool,
    "out": str,
    "format": str,
    "jobs": int,
    "log_level": str,
}


def parse_config_text(text):
    """
    Parse ``key = value`` lines. Blank lines and ``#`` comments are skipped, keys may
    use ``-`` or ``_``.
    """
    values = {}
    for line in text.split("\n"):
        line = line.split("#", 1)[0].strip()
        if "=" in line:
            key, value = line.split("=", 1)
            key = key.strip().replace("-", "_")
            if key not in _CONVERTERS:
                msg = f"Unknown configuration key '{key}'"
                log.error(msg)
                raise ConfigError(msg)
            try:
                values[key] = _CONVERTERS[key](value.strip())
            except (ValueError, argparse.ArgumentTypeError) as exc:
                msg = f"Bad value for '{key}': {exc}"
                log.error(msg)
                raise ConfigError(msg)  # pylint: disable=raise-missing-from
        elif line:
            log.warning(f"Cannot determine key/value of configuration line '{line}'")
    return values


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sigma", type=float, help="packet or pump width σ/Ω")
    common.add_argument("--sigma-tau", type=float, help="jitter width στΩ")
    common.add_argument("--p", type=float, help="photon (pair) probability against vacuum")
    common.add_argument("--grid-n", type=int, help="frequency points per photon")
    common.add_argument("--tau-n", type=int, help="jitter delays, odd")
    common.add_argument("--cutoff", type=float, help="frequency grid half-width in Ω")
    common.add_argument("--tau-cutoff", type=float, help="delay grid half-width in std")
    common.add_argument("--sweep", type=parse_sweep, help="sweep range lo:hi:step")
    common.add_argument("--out", help="output file, default stdout")
    common.add_argument("--format", choices=["csv"], help="output format")
    common.add_argument("--jobs", type=int, help="worker processes for sweeps")
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--log-level", choices=LOG_LEVELS, help="log level")

    parser = argparse.ArgumentParser(
        prog="photon-ent", description="Entanglement of photons behind a 50/50 beam splitter"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("single", parents=[common], help="jittered single photon vs. στ")
    two = commands.add_parser("two", parents=[common], help="photon pair vs. σ or στ")
    two.add_argument("--mixed", action="store_true", default=None, help="sweep στ instead")
    commands.add_parser("vacuum", parents=[common], help="jittered pair with vacuum vs. p")
    commands.add_parser("purity-scan", parents=[common], help="E_N against purity")
    commands.add_parser("filter", parents=[common], help="parity-filtered pair vs. στ")
    commands.add_parser("check", parents=[common], help="compare against closed forms")
    return parser


def resolve_config(args):
    """
    Merge defaults, the configuration file and explicit flags into a :class:`RunConfig`.
    """
    values = {}
    if args.config:
        log.debug(f"Reading configuration from {args.config}")
        try:
            with open(args.config, encoding="utf-8") as handle:
                values.update(parse_config_text(handle.read()))
        except OSError as exc:
            msg = f"Cannot read configuration file: {exc}"
            log.error(msg)
            raise ConfigError(msg)  # pylint: disable=raise-missing-from
    for key in _CONVERTERS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return RunConfig(command=args.command, **values).validate()


def _two_photon_source(config):
    return pairsource.joint_amplitude(config.grid(), sigma_pump=config.sigma)


def single_row(config, sigma_tau):
    packet = wavepacket.gaussian_packet(config.grid(), config.sigma)
    kernel = wavepacket.jitter_kernel(packet, config.jitter(sigma_tau))
    purity_analytic = reference.purity_gauss_jitter(config.sigma, sigma_tau)
    return [
        sigma_tau,
        wavepacket.kernel_purity(kernel),
        purity_analytic,
        fockspace.log_negativity(splitter.split_single_mixed(kernel)),
        reference.ln_single_mixed(purity_analytic),
    ]


def two_pure_row(config, sigma):
    ja = pairsource.joint_amplitude(config.grid(), sigma_pump=sigma)
    sd = pairsource.schmidt(ja)
    e_in, ln_in = pairsource.pre_splitter_entanglement(sd)
    out = splitter.split_two_pure(sd)
    e_out = fockspace.entropy_of_entanglement(out)
    ln_out = fockspace.log_negativity(out)
    return [
        sigma,
        e_in,
        e_out,
        ln_in,
        ln_out,
        e_out - (2.0 + e_in / 2.0),
        2.0 ** (ln_out / 2.0) - (1.0 + 2.0 ** (ln_in / 2.0)),
    ]


def two_mixed_row(config, sigma_tau):
    ja = _two_photon_source(config)
    jitter = config.jitter(sigma_tau)
    ln_in = fockspace.log_negativity(pairsource.mixed_pair_density(ja, jitter))
    ln_out = fockspace.log_negativity(splitter.split_two_mixed(ja, jitter))
    return [sigma_tau, ln_out, reference.pair_out_relations(0.0, ln_in)[1]]


def _vacuum_relation(ln_in, p):
    return 2.0 * np.log2(2.0 ** (ln_in / 2.0) + 1.0 - np.sqrt(1.0 - p))


def vacuum_row(config, p):
    ja = _two_photon_source(config)
    jitter = config.jitter()
    rho_out = splitter.split_two_vac_mixed(p, ja, jitter)
    ln_in = fockspace.log_negativity(pairsource.mixed_pair_density(ja, jitter, p))
    return [
        p,
        fockspace.log_negativity(rho_out),
        _vacuum_relation(ln_in, p),
        splitter.filtered_negativity(rho_out),
    ]


def filter_row(config, sigma_tau):
    ja = _two_photon_source(config)
    jitter = config.jitter(sigma_tau)
    rho_out = splitter.split_two_mixed(ja, jitter)
    ln_in = fockspace.log_negativity(pairsource.mixed_pair_density(ja, jitter))
    return [
        sigma_tau,
        fockspace.log_negativity(rho_out),
        reference.pair_out_relations(0.0, ln_in)[1],
        splitter.filtered_negativity(rho_out),
    ]


def purity_row(config, sigma_tau):
    """
    Two-photon output purity, the negativity of a split single photon prepared with that
    purity, and the two-photon output negativity.
    """
    rho_out = splitter.split_two_mixed(_two_photon_source(config), config.jitter(sigma_tau))
    purity = min(fockspace.purity(rho_out), 1.0)
    grid = wavepacket.FrequencyGrid.symmetric(config.cutoff, max(config.grid_n, 2 / purity))
    kernel = wavepacket.kernel_with_purity(grid, purity)
    ln_single = fockspace.log_negativity(splitter.split_single_mixed(kernel))
    return [purity, ln_single, fockspace.log_negativity(rho_out)]


def _sweep(config, row, points):
    worker = functools.partial(row, config)
    log.debug(f"Evaluating {len(points)} sweep points with {config.jobs} job(s)")
    if config.jobs > 1:
        with multiprocessing.Pool(config.jobs) as pool:
            return pool.map(worker, list(points))
    return [worker(point) for point in points]


def cmd_single(config):
    header = ["sigma_tau", "purity_numeric", "purity_analytic", "ln_numeric", "ln_analytic"]
    return header, _sweep(config, single_row, config.sweep_points(SWEEP_SIGMA_TAU))


def cmd_two(config):
    if config.mixed:
        header = ["sigma_tau", "LN_out_numeric", "LN_out_pure_relation"]
        return header, _sweep(config, two_mixed_row, config.sweep_points(SWEEP_SIGMA_TAU))
    header = [
        "sigma",
        "E_in",
        "E_out",
        "LN_in",
        "LN_out",
        "E_relation_residual",
        "LN_relation_residual",
    ]
    return header, _sweep(config, two_pure_row, config.sweep_points(SWEEP_SIGMA))


def cmd_vacuum(config):
    header = ["p", "LN_out", "LN_pure_relation", "LN_filtered"]
    return header, _sweep(config, vacuum_row, config.sweep_points(SWEEP_P))


def cmd_filter(config):
    header = ["sigma_tau", "LN_out", "LN_pure_relation", "LN_filtered"]
    return header, _sweep(config, filter_row, config.sweep_points(SWEEP_SIGMA_TAU))


def cmd_purity_scan(config):
    header = ["purity", "LN_single", "LN_two"]
    return header, _sweep(config, purity_row, config.sweep_points(SWEEP_SIGMA_TAU))


def write_csv(header, rows, handle):
    """
    Magic line, header, then rows with 12 significant digits, LF line endings.
    """
    handle.write(CSV_MAGIC + "\n")
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format(float(value), ".12g") for value in row])


def cmd_check(handle=None):
    """
    Run the closed-form checks, print a PASS/FAIL/WARN table and return the exit code.
    """
    handle = handle or sys.stdout
    results = checks.run_all()
    failed = 0
    for result in results:
        handle.write(f"{result.status:<5} {result.name:<40} {result.detail}\n")
        failed += result.status == checks.FAIL
    handle.write(f"{len(results) - failed}/{len(results)} checks without failure\n")
    return 1 if failed else 0


_TABLES = {
    "single": cmd_single,
    "two": cmd_two,
    "vacuum": cmd_vacuum,
    "purity-scan": cmd_purity_scan,
    "filter": cmd_filter,
}


def _emit(config, write):
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as handle:
            return write(handle)
    return write(sys.stdout)


def main(argv=None):
    """
    Console entry point, returns the process exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        config = resolve_config(args)
    except PhotonEntError as exc:
        sys.stderr.write(f"photon-ent: error: {exc}\n")
        return 2
    logging.basicConfig(
        level=getattr(logging, config.log_level.upper()), format=LOG_FORMAT, stream=sys.stderr
    )
    log.debug(f"Running {config.command} with {config}")
    try:
        if config.command == "check":
            return _emit(config, cmd_check)
        header, rows = _TABLES[config.command](config)
        _emit(config, lambda handle: write_csv(header, rows, handle))
    except PhotonEntError as exc:
        sys.stderr.write(f"photon-ent: error: {exc}\n")
        return 2
    return 0
