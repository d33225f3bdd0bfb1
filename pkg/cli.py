#!/usr/bin/env python3
"""
medialdd command line
classify, abstract, search and enumerate; every report is plain `KEY: value` text on stdout.

Exit codes: 0 success, 2 parse / usage error, 3 budget exceeded,
4 gated abstraction refused, 1 anything unexpected.
"""

import functools
import logging
import sys
import time
from typing import Any, Optional, Sequence, Tuple

import click

from algebra import FiniteMagma, RealOp, classify, sample_laws
from catalog import builtin, catalog_names
from config import get_settings
from enumeration import EXHAUSTIVE_MAX_SIZE, enumerate_tables, format_table, parse_filters
from errors import (ArityError, BudgetExceededError, CarrierError, CatalogError, MedialddError,
                    NotWellDefinedError, ParseError, VariableIndexError)
from formats import digest, load_function, load_magma, operation_digest, serialize_function
from gsf import TruthTable, abstract_all_orders, abstract_sequence, exhaustive_confirmation, search_counterexample
from mtbdd import AbstractionRequest, DDManager, Policy

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_REFUSED = 4

INPUT_ERRORS = (ParseError, CatalogError, CarrierError, ArityError, VariableIndexError)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _command_line(name: str, *pairs: Tuple[str, Any]) -> str:
    parts = [name]
    for option, value in pairs:
        if value is None or value == () or value is False:
            continue
        if value is True:
            parts.append(option)
        elif isinstance(value, (list, tuple)):
            parts.append(option)
            parts.extend(str(v) for v in value)
        else:
            parts.extend((option, str(value)))
    return " ".join(parts)


def _emit(key: str, value: Any = None) -> None:
    click.echo(key if value is None else f"{key}: {value}")


def reporting(command):
    """Map library errors onto the exit-code contract and time the command"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        start = time.perf_counter()
        code = EXIT_OK
        try:
            command(*args, **kwargs)
        except INPUT_ERRORS as e:
            click.echo(f"error: {e}", err=True)
            code = EXIT_PARSE
        except BudgetExceededError as e:
            click.echo(f"error: {e} (limit {e.limit}, requested {e.requested})", err=True)
            code = EXIT_BUDGET
        except NotWellDefinedError as e:
            click.echo(f"error: {e}", err=True)
            code = EXIT_REFUSED
        except click.exceptions.Exit:
            raise
        except click.ClickException:
            raise
        except Exception as e:
            logger.error(f"{ctx.info_name} failed: {e}", exc_info=True)
            click.echo(f"error: {e}", err=True)
            code = EXIT_UNEXPECTED
        elapsed = time.perf_counter() - start
        logger.info(f"{ctx.info_name} finished in {elapsed:.3f}s with exit code {code}")
        if ctx.obj and ctx.obj.get("timing"):
            click.echo(f"duration: {elapsed:.3f}", err=True)
        if code != EXIT_OK:
            sys.exit(code)
    return wrapper


def _load_operation(builtin_name: Optional[str], magma_path: Optional[str]):
    if (builtin_name is None) == (magma_path is None):
        raise click.UsageError("Give exactly one of --builtin or --magma")
    if builtin_name is not None:
        return builtin(builtin_name)
    return load_magma(magma_path)


def _render(op: Any):
    return getattr(op, "format_value", str)


def _describe_values(f: TruthTable, op: Any) -> str:
    render = _render(op)
    if f.is_constant():
        return f"constant {render(f[0])}"
    return " ".join(render(v) for v in f.values.tolist())


def _gate_line(op: Any) -> Tuple[bool, str]:
    medial, witness = op.medial_certificate()
    if medial:
        return True, "accepted"
    return False, f"refused, witness {witness.describe(_render(op))}"


operation_options = [
    click.option("--builtin", "builtin_name", metavar="NAME", help="Catalog operation, e.g. tamura or z-add(3)"),
    click.option("--magma", "magma_path", type=click.Path(dir_okay=False), help="Magma table file"),
]


def with_operation(command):
    for option in reversed(operation_options):
        command = option(command)
    return command


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for INFO logging, -vv for DEBUG")
@click.option("--timing", is_flag=True, help="Print the wall-clock duration to stderr")
@click.pass_context
def cli(ctx: click.Context, verbose: int, timing: bool):
    """Decision-diagram abstraction over magmas, gated on the medial law."""
    settings = get_settings()
    level = settings.log_level
    if verbose == 1:
        level = "INFO"
    elif verbose > 1:
        level = "DEBUG"
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    logging.getLogger().setLevel(level)
    ctx.ensure_object(dict)
    ctx.obj["timing"] = timing


@cli.command("classify")
@with_operation
@click.option("--trials", type=int, default=1000, show_default=True, help="Samples for real operations")
@click.option("--seed", type=int, default=None, help="Sampling seed (default MEDIALDD_SEED)")
@reporting
def cmd_classify(builtin_name: Optional[str], magma_path: Optional[str], trials: int, seed: Optional[int]):
    """Report commutativity, associativity, mediality and units."""
    op = _load_operation(builtin_name, magma_path)
    seed = get_settings().seed if seed is None else seed
    sampled = isinstance(op, RealOp)
    _emit("command", _command_line("classify", ("--builtin", builtin_name), ("--magma", magma_path),
                                   ("--trials", trials if sampled else None), ("--seed", seed if sampled else None)))
    _emit("input-digest", operation_digest(op))
    _emit("magma", op.name)
    render = _render(op)

    if isinstance(op, FiniteMagma):
        report = classify(op)
        _emit("size", op.size)
        _emit("method", f"exhaustive over {op.size ** 4} quadruples")
        _emit("commutative", _verdict(report.commutative, report.commutative_witness, render))
        _emit("associative", _verdict(report.associative, report.associative_witness, render))
        _emit("medial", _verdict(report.medial, report.medial_witness, render, shout=True))
        _emit("left-units", " ".join(render(e) for e in report.left_units) or "none")
        _emit("right-units", " ".join(render(e) for e in report.right_units) or "none")
        _emit("unit", "none" if report.unit is None else render(report.unit))
        _emit("abstractable", _yes(report.abstractable))
        return

    laws = sample_laws(op, trials=trials, seed=seed)
    medial, witness = op.medial_certificate()
    _emit("method", f"sampled over {trials} trials, medial from the catalog certificate")
    _emit("closed", _yes(laws.closed) if laws.closed else
          f"no, {render(laws.closure_witness[0])} * {render(laws.closure_witness[1])} leaves the domain")
    _emit("commutative", _verdict(laws.commutative, laws.commutative_witness, render))
    _emit("associative", _verdict(laws.associative, laws.associative_witness, render))
    _emit("medial", _verdict(medial, witness, render, shout=True))
    if medial and not laws.medial:
        _emit("medial-sample", _verdict(False, laws.medial_witness, render))
    _emit("abstractable", _yes(medial))


def _verdict(flag: bool, witness: Any, render, shout: bool = False) -> str:
    if flag:
        return "yes"
    return f"{'NO' if shout else 'no'}, witness {witness.describe(render)}"


@cli.command("abstract")
@click.option("--function", "function_path", required=True, type=click.Path(dir_okay=False),
              help="Function file")
@with_operation
@click.option("--vars", "variables", type=int, multiple=True, help="Variables to abstract (default: all)")
@click.argument("extra_vars", nargs=-1, type=int)
@click.option("--order", type=click.Choice(["given", "ascending", "all"]), default="ascending", show_default=True)
@click.option("--policy", type=click.Choice(["gated", "forced"]), default="gated", show_default=True)
@reporting
def cmd_abstract(function_path: str, builtin_name: Optional[str], magma_path: Optional[str],
                 variables: Sequence[int], extra_vars: Sequence[int], order: str, policy: str):
    """Abstract variables of a function with a decision diagram.

    `--vars 1 2` and `--vars 1 --vars 2` are equivalent.
    """
    op = _load_operation(builtin_name, magma_path)
    f = load_function(function_path, op)
    chosen = tuple(variables) + tuple(extra_vars) or tuple(range(1, f.n + 1))
    _emit("command", _command_line("abstract", ("--function", function_path), ("--builtin", builtin_name),
                                   ("--magma", magma_path), ("--vars", chosen), ("--order", order),
                                   ("--policy", policy)))
    _emit("input-digest", digest(serialize_function(f, op) + "\n" + operation_digest(op)))
    _emit("operation", op.name)
    _emit("vars", " ".join(str(i) for i in chosen))
    accepted, gate = _gate_line(op) if len(chosen) > 1 else (True, "not needed")
    _emit("gate", gate)

    if order == "all":
        limit = get_settings().cli_order_limit
        outcomes = abstract_all_orders(f, chosen, op, limit=limit)
        _emit("distinct-results", len(outcomes))
        for outcome in outcomes:
            orders = " | ".join(" ".join(str(i) for i in o) for o in outcome.orders)
            _emit("result", f"{_describe_values(outcome.result, op)}; orders: {orders}")
        return

    manager = DDManager(f.n, carrier=op)
    root = manager.from_truth_table(f)
    sequence = chosen if order == "given" else tuple(sorted(chosen))
    request = AbstractionRequest(op, sequence, Policy.GATED if policy == "gated" else Policy.FORCED)
    if policy == "forced" and not accepted:
        _emit("order-dependent", "yes")
    result = manager.abstract_set(request, root)
    applied = tuple(sorted(sequence)) if request.policy is Policy.GATED else sequence
    _emit("order", " ".join(str(i) for i in applied))
    _emit("result", _describe_values(manager.to_truth_table(result), op))
    _emit("nodes", f"{manager.node_count(root)} -> {manager.node_count(result)}")
    _emit("diagram")
    click.echo(manager.dump(result))


@cli.command("search")
@with_operation
@click.option("--n", "n", type=int, default=2, show_default=True, help="Variable count")
@reporting
def cmd_search(builtin_name: Optional[str], magma_path: Optional[str], n: int):
    """Build an order-dependent function, or confirm abstractability."""
    op = _load_operation(builtin_name, magma_path)
    _emit("command", _command_line("search", ("--builtin", builtin_name), ("--magma", magma_path), ("--n", n)))
    _emit("input-digest", operation_digest(op))
    _emit("operation", op.name)
    render = _render(op)
    f = search_counterexample(op, n, verify=False)
    if f is not None:
        _, witness = op.medial_certificate()
        _emit("result", "order-dependent")
        _emit("witness", witness.describe(render))
        _emit("function", " ".join(render(v) for v in f.values.tolist()))
        _emit("outcome 1 2", render(abstract_sequence(f, (1, 2), op)[0]))
        _emit("outcome 2 1", render(abstract_sequence(f, (2, 1), op)[0]))
        return

    if isinstance(op, FiniteMagma):
        _emit("result", f"abstractable (medial law verified over {op.size ** 4} quadruples)")
        confirmed = exhaustive_confirmation(op, n)
        if confirmed is None:
            _emit("exhaustive", f"skipped, {op.size}^{2 ** n} functions exceed the budget")
        elif confirmed:
            _emit("exhaustive", f"confirmed over {op.size ** (2 ** n)} functions")
        else:
            _emit("exhaustive", "CONTRADICTION, an order-dependent function exists")
    else:
        _emit("result", "abstractable (medial certificate of the catalog)")


@cli.command("enumerate")
@click.option("--size", type=click.IntRange(min=1), required=True, help="Carrier size")
@click.option("--filter", "filters", multiple=True, help="Comma-separated filters, all must hold")
@click.option("--limit", type=click.IntRange(min=0), default=1, show_default=True, help="Exemplar tables per profile")
@click.option("--sample", type=click.IntRange(min=1), default=None, help=f"Random tables instead of all (needed above size {EXHAUSTIVE_MAX_SIZE})")
@click.option("--seed", type=int, default=None, help="Sampling seed (default MEDIALDD_SEED)")
@reporting
def cmd_enumerate(size: int, filters: Sequence[str], limit: int, sample: Optional[int], seed: Optional[int]):
    """Count small tables per classification profile."""
    try:
        names = parse_filters(filters)
    except MedialddError as e:
        raise click.BadParameter(str(e), param_hint="--filter")
    seed = get_settings().seed if seed is None else seed
    result = enumerate_tables(size, names, limit=limit, sample=sample, seed=seed)
    line = _command_line("enumerate", ("--size", size), ("--filter", ",".join(names) or None), ("--limit", limit),
                         ("--sample", sample), ("--seed", seed if sample is not None else None))
    _emit("command", line)
    _emit("input-digest", digest(line + "\n"))
    _emit("size", size)
    _emit("mode", f"sampled {sample} with seed {seed}" if result.sampled else "exhaustive")
    _emit("filters", ",".join(names) or "none")
    _emit("tables", result.examined)
    _emit("matched", result.matched)
    for profile in result.ordered_profiles():
        _emit("profile", f"{profile.describe()} count={result.profiles[profile]}")
        for table in result.exemplars.get(profile, []):
            _emit("  exemplar", format_table(table))
    for law, count in result.law_exceptions.items():
        _emit("law", f"{law} exceptions={count}")


@cli.command("builtins")
def cmd_builtins():
    """List catalog names."""
    for name in catalog_names():
        click.echo(name)


if __name__ == "__main__":
    cli()
