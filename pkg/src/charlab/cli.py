"""Command line entry point ``charlab``.

Weights are given as Dynkin labels; ``--qtrunc N`` is a window in whole
powers of ``q`` (default 8, overridable with ``CHARLAB_QTRUNC``).  Identities
are checked through ``q^(N-2)``; the extra two degrees are a safety buffer.

Exit codes: 0 success, 1 verification failure, 2 insufficient precision,
3 usage error.
"""

from __future__ import annotations

import json
import os
import sys
from typing import Sequence

import click

from . import demazure, macdonald, special_current, verify
from .root_datum import build_datum, dynkin_to_eps
from .series import CharSeries, PrecisionError

EXIT_OK, EXIT_FAIL, EXIT_PRECISION, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_QTRUNC = 8


class VerificationFailed(Exception):
    pass


def default_qtrunc() -> int:
    raw = os.environ.get("CHARLAB_QTRUNC")
    if raw is None:
        return DEFAULT_QTRUNC
    try:
        n = int(raw)
    except ValueError:
        raise click.UsageError(f"CHARLAB_QTRUNC must be an integer, got {raw!r}")
    if n < 1:
        raise click.UsageError("CHARLAB_QTRUNC must be positive")
    return n


def parse_weight(text: str, rank: int, nonnegative: bool = False) -> tuple[int, ...]:
    """``"1,0,-2"`` to a tuple of integers of length ``rank``."""
    try:
        labels = tuple(int(p) for p in text.replace(" ", "").split(",") if p != "")
    except ValueError:
        raise click.UsageError(f"weight must be comma-separated integers, got {text!r}")
    if len(labels) != rank:
        raise click.UsageError(f"weight needs {rank} labels, got {len(labels)}")
    if nonnegative and any(m < 0 for m in labels):
        raise click.UsageError("labels must be nonnegative here")
    return labels


def format_weight(labels: Sequence[int]) -> str:
    return ",".join(str(int(m)) for m in labels)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)


def _qtrunc(n: int | None) -> int:
    n = default_qtrunc() if n is None else n
    if n < 2:
        raise click.UsageError("--qtrunc must be at least 2")
    return n


def _require_window(f, need_half: int, n: int, what: str = "rerun") -> None:
    top = f.max_half
    if top is not None and top < need_half:
        bigger = n + max(2, (need_half - top + 1) // 2)
        raise PrecisionError(
            f"result known only through q^({top}/2), need q^({need_half}/2); {what} with --qtrunc {bigger}"
        )


def _char_payload(f: CharSeries, labels, kind: str) -> dict:
    return {"kind": kind, "weight": list(labels), **f.to_json()}


rank_opt = click.option("--rank", "rank", type=click.IntRange(min=1), required=True)
weight_opt = click.option("--weight", "weight", required=True, help="Dynkin labels m1,...,mL")
qtrunc_opt = click.option("--qtrunc", "qtrunc", type=int, default=None)
out_opt = click.option("--out", "out", type=click.Path(dir_okay=False), default=None)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Graded characters and constant-term pairings for twisted affine type A_2l^(2)."""


@cli.command("char")
@click.argument("kind", type=click.Choice(["thin", "local-weyl", "slice", "global-weyl", "vacuum"]))
@rank_opt
@click.option("--weight", "weight", default=None, help="Dynkin labels m1,...,mL")
@qtrunc_opt
@out_opt
def char_cmd(kind, rank, weight, qtrunc, out):
    """Compute a graded character and print it as JSON."""
    n = _qtrunc(qtrunc)
    datum = build_datum(rank)
    if kind == "vacuum":
        labels = parse_weight(weight, rank) if weight else (0,) * rank
        f = demazure.vacuum_character(rank, 2 * n)
    else:
        if weight is None:
            raise click.UsageError("--weight is required")
        labels = parse_weight(weight, rank)
        lam = dynkin_to_eps(labels)
        if kind in ("local-weyl", "global-weyl") and any(m < 0 for m in labels):
            raise click.UsageError(f"{kind} needs a dominant weight")
        if kind == "thin":
            f = demazure.thin_character(datum, lam)
        elif kind == "local-weyl":
            f = demazure.local_weyl_character(datum, lam)
        elif kind == "slice":
            f = macdonald.slice_character(datum, lam, 2 * n)
        else:
            f = macdonald.global_weyl_character(datum, lam, 2 * n)
        if not f.is_exact:
            _require_window(f, 2 * (n - 2), n)
            f = f.truncate(min(f.max_half, 2 * n))
    _emit(_dump(_char_payload(f, labels, kind)), out)


@cli.command("poly")
@click.argument("kind", type=click.Choice(["ebar", "edag"]))
@rank_opt
@weight_opt
@qtrunc_opt
@out_opt
def poly_cmd(kind, rank, weight, qtrunc, out):
    """The t = 0 polynomial (ebar) or its dual in inverted variables (edag)."""
    n = _qtrunc(qtrunc)
    datum = build_datum(rank)
    labels = parse_weight(weight, rank)
    lam = dynkin_to_eps(labels)
    if kind == "ebar":
        f = demazure.ebar(datum, lam)
    else:
        f = macdonald.edag_inverted(datum, lam, 2 * n)
        if not f.is_exact:
            _require_window(f, 2 * (n - 2), n)
            f = f.truncate(min(f.max_half, 2 * n))
    _emit(_dump(_char_payload(f, labels, kind)), out)


def _load_char(path: str) -> CharSeries:
    try:
        with open(path, encoding="utf-8") as fh:
            return CharSeries.from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise click.UsageError(f"cannot read a character from {path}: {exc}")


@cli.command("pair")
@click.argument("kind", type=click.Choice(["ext", "sym"]))
@rank_opt
@click.option("--left", "left", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--right", "right", type=click.Path(exists=True, dir_okay=False), required=True)
@qtrunc_opt
@out_opt
def pair_cmd(kind, rank, left, right, qtrunc, out):
    """Constant-term pairing of two characters stored as JSON files."""
    n = _qtrunc(qtrunc)
    f, g = _load_char(left), _load_char(right)
    if f.rank != rank or g.rank != rank:
        raise click.UsageError("character rank does not match --rank")
    target = 2 * (n - 2)
    try:
        if kind == "ext":
            val = macdonald.pair_ext(f, g, target)
        else:
            if f.level or g.level:
                raise click.UsageError("the symmetric pairing takes level-zero characters")
            val = macdonald.pair_sym(f, g, target)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _require_window(val, target, n, "regenerate the left character")
    _emit(_dump({"kind": kind, "value": val.to_json(), "text": str(val)}), out)


@cli.command("dim")
@click.argument("kind", type=click.Choice(["special"]))
@rank_opt
@weight_opt
def dim_cmd(kind, rank, weight):
    """Dimension of a local Weyl module of the special current algebra."""
    labels = parse_weight(weight, rank, nonnegative=True)
    click.echo(special_current.dim_local_weyl_special(labels))


@cli.command("report")
@click.argument("kind", type=click.Choice(["a-lambda"]))
@rank_opt
@weight_opt
@qtrunc_opt
@out_opt
def report_cmd(kind, rank, weight, qtrunc, out):
    """Free rank, generators and Hilbert series of the endomorphism algebra."""
    n = _qtrunc(qtrunc)
    labels = parse_weight(weight, rank, nonnegative=True)
    _emit(_dump(special_current.free_rank_report(labels, n)), out)


SUITES = ("demazure", "biorthogonality", "weyl-orthogonality", "vacuum-sum", "hull", "pseries")


def run_suite(name: str, rank: int, n: int, bound: int) -> verify.Outcome:
    datum = build_datum(rank)
    target, work = 2 * (n - 2), 2 * n
    if name == "demazure":
        return verify.check_demazure(datum, bound)
    if name == "biorthogonality":
        return verify.check_biorthogonality(datum, bound, target, work)
    if name == "weyl-orthogonality":
        return verify.check_weyl_orthogonality(datum, bound, target, work)
    if name == "vacuum-sum":
        # the bound is the energy cut-off (lam|lam)/2 <= B
        return verify.check_vacuum_sum(datum, bound, max(work, 2 * bound))
    if name == "hull":
        return verify.check_order_and_hull(rank, bound)
    if name == "pseries":
        return verify.check_pseries(rank, n)
    raise click.UsageError(f"unknown suite {name}")


@cli.command("verify")
@click.argument("suite", type=click.Choice(("all",) + SUITES))
@rank_opt
@qtrunc_opt
@click.option("--max-weight", "bound", type=click.IntRange(min=0), default=1)
def verify_cmd(suite, rank, qtrunc, bound):
    """Run a verification suite; exit 1 on the first failure."""
    n = _qtrunc(qtrunc)
    names = SUITES if suite == "all" else (suite,)
    failed = None
    for name in names:
        outcome = run_suite(name, rank, n, bound)
        click.echo(outcome.line())
        if not outcome.ok and failed is None:
            failed = outcome
    if failed is not None:
        raise VerificationFailed(f"{failed.name}: {failed.detail}")


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=args, prog_name="charlab", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        return EXIT_USAGE
    except click.UsageError as exc:
        click.echo(exc.format_message(), err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        click.echo(exc.format_message(), err=True)
        return EXIT_USAGE
    except VerificationFailed as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return EXIT_FAIL
    except PrecisionError as exc:
        click.echo(f"insufficient precision: {exc}", err=True)
        return EXIT_PRECISION
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


__all__ = ["main", "entry", "parse_weight", "format_weight", "default_qtrunc"]
