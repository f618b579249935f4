"""
CLI Commands

Implementations of the `transform`, `sample`, `verify` and `bench`
subcommands. Each command takes the parsed arguments and the loaded
configuration and returns an exit code.
"""

import argparse
import csv
import dataclasses
import hashlib
import itertools
import json
import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple

from ..circuit.netlist import (
    Circuit,
    CircuitError,
    build_circuit,
    cnf_gate_equivalents,
    gate_equivalents,
    ops_reduction,
)
from ..circuit.serialization import export_json, import_json, render_python_model
from ..cnf.dimacs import DimacsParseError, read_dimacs
from ..cnf.formula import ClauseMatrix, CnfFormula, eval_cnf
from ..config import Config, SamplerConfig
from ..extraction.extractor import CnfExtractor, ExtractionResult
from ..extraction.paths import classify_paths
from ..logic.expr import to_infix
from ..sampling.sampler import GradientSampler, SamplerError, dedupe_key
from ..sampling.solutions import format_solution, read_solutions, write_solutions


logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit codes of the CLI."""
    OK = 0
    USAGE = 1
    PARSE = 2
    UNSAT = 3
    TIMEOUT = 4
    VERIFY_FAILED = 5


class InputError(Exception):
    """Exception raised when an input file cannot be used."""
    pass


def _echo(message: str) -> None:
    print(message, file=sys.stderr)


def _load_cnf(path: str) -> CnfFormula:
    try:
        return read_dimacs(path)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}")
    except DimacsParseError as e:
        raise InputError(f"{path}: {e}")


def _transform(cnf: CnfFormula, config: Config) -> Tuple[Circuit, ExtractionResult]:
    result = CnfExtractor(config.extractor).extract(cnf)
    return build_circuit(result), result


def transform_stats(cnf: CnfFormula, circuit: Circuit, result: ExtractionResult) -> Dict[str, Any]:
    """Statistics block reported by `transform` and stored with cached circuits."""
    classification = classify_paths(result)
    cnf_count = cnf_gate_equivalents(cnf)
    circuit_count = gate_equivalents(circuit)
    return {
        "num_vars": cnf.num_vars,
        "num_clauses": cnf.num_clauses,
        "pi": len(result.pi),
        "po": len(result.po),
        "iv": len(result.iv),
        "aux": len(result.aux),
        "constrained_pi": classification.num_constrained,
        "unconstrained_pi": classification.num_unconstrained,
        "cnf_gate_equivalents": cnf_count.two_input_equivalents,
        "circuit_gate_equivalents": circuit_count.two_input_equivalents,
        "circuit_gates_by_kind": circuit_count.by_kind,
        "ops_reduction": ops_reduction(cnf_count, circuit_count),
        "structural_sharing": "by variable",
        "transform_seconds": result.stats.wall_time,
        "fallback_definitions": result.stats.fallback_definitions,
        "undecided_checks": result.stats.undecided_checks,
        "unsat_reason": result.unsat_reason,
    }


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text, encoding="utf-8")


def _write_json(path: Optional[str], data: Any) -> None:
    text = json.dumps(data, indent=2) + "\n"
    if path == "-":
        sys.stderr.write(text)
    else:
        _write_text(path, text)


def cmd_transform(args: argparse.Namespace, config: Config) -> int:
    """
    Transform a DIMACS file into a circuit.

    Writes the circuit JSON to --out (stdout by default), optionally the
    recovered definitions (--dump-exprs, to stderr), the stats block
    (--stats [PATH], stderr when no path) and a Python model (--emit-python).
    """
    try:
        cnf = _load_cnf(args.cnf)
    except InputError as e:
        _echo(f"Error: {e}")
        return ExitCode.PARSE

    circuit, result = _transform(cnf, config)
    _write_text(args.out, export_json(circuit, result))
    stats = transform_stats(cnf, circuit, result)

    if args.dump_exprs:
        for definition in result.be:
            label = f"x{definition.var}" + (" (aux)" if definition.aux else "")
            _echo(f"{label} = {to_infix(definition.expr, top_level=True)}")
    if args.stats is not None:
        _write_json(args.stats, stats)
    if args.emit_python:
        Path(args.emit_python).write_text(render_python_model(circuit, result), encoding="utf-8")

    ratio = stats["ops_reduction"]
    _echo(
        f"PI={stats['pi']} PO={stats['po']} IV={stats['iv']} aux={stats['aux']} "
        f"gates CNF={stats['cnf_gate_equivalents']} circuit={stats['circuit_gate_equivalents']} "
        f"ratio={'n/a' if ratio is None else f'{ratio:.2f}'} "
        f"time={stats['transform_seconds']:.3f}s"
    )
    if result.is_unsat:
        _echo(f"UNSAT by construction: {result.unsat_reason}")
        return ExitCode.UNSAT
    return ExitCode.OK


def cache_path(cnf_path: str, config: Config) -> Path:
    """Cache location next to the input, keyed by content and extractor settings."""
    digest = hashlib.sha256()
    digest.update(Path(cnf_path).read_bytes())
    digest.update(json.dumps(dataclasses.asdict(config.extractor), sort_keys=True).encode())
    path = Path(cnf_path)
    return path.with_name(f"{path.name}.{digest.hexdigest()[:16]}.circuit.json")


def load_pipeline(
    cnf_path: str,
    config: Config,
    circuit_path: Optional[str] = None,
    use_cache: bool = True,
) -> Tuple[CnfFormula, Circuit, ExtractionResult]:
    """
    Parse the CNF and obtain its circuit from --circuit, the cache or a fresh
    transform.

    Raises:
        InputError: If an input file is unreadable or malformed.
    """
    cnf = _load_cnf(cnf_path)
    if circuit_path is not None:
        try:
            circuit, result = import_json(Path(circuit_path).read_text(encoding="utf-8"))
        except OSError as e:
            raise InputError(f"Cannot read {circuit_path}: {e}")
        except UnicodeDecodeError:
            raise InputError(f"{circuit_path}: not UTF-8 text")
        except CircuitError as e:
            raise InputError(f"{circuit_path}: {e}")
        if circuit.num_vars != cnf.num_vars:
            raise InputError(
                f"{circuit_path} has {circuit.num_vars} variables, the CNF has {cnf.num_vars}"
            )
        return cnf, circuit, result

    cached = cache_path(cnf_path, config) if use_cache else None
    if cached is not None and cached.exists():
        try:
            circuit, result = import_json(cached.read_text(encoding="utf-8"))
            logger.info(f"Loaded cached circuit {cached}")
            return cnf, circuit, result
        except (OSError, UnicodeDecodeError, CircuitError) as e:
            logger.warning(f"Ignoring unusable cache {cached}: {e}")

    circuit, result = _transform(cnf, config)
    if cached is not None:
        try:
            cached.write_text(export_json(circuit, result), encoding="utf-8")
        except OSError as e:
            logger.warning(f"Could not write cache {cached}: {e}")
    return cnf, circuit, result


def _sampler_config(args: argparse.Namespace, base: SamplerConfig) -> SamplerConfig:
    overrides = {
        "batch_size": args.batch,
        "iterations": args.iters,
        "learning_rate": args.lr,
        "seed": args.seed,
        "max_solutions": args.max_solutions,
        "timeout": args.timeout,
        "restart_policy": args.restart_policy,
        "workers": args.workers,
    }
    return dataclasses.replace(base, **{k: v for k, v in overrides.items() if v is not None})


def cmd_sample(args: argparse.Namespace, config: Config) -> int:
    """
    Sample verified solutions of a DIMACS file.

    Exit code 0 when the run ends normally, 3 when the instance is UNSAT
    by construction and 4 when the timeout hits before the quota is met.
    """
    try:
        sampler_config = _sampler_config(args, config.sampler)
        sampler_config.validate()
    except ValueError as e:
        _echo(f"Error: {e}")
        return ExitCode.USAGE

    try:
        cnf, circuit, result = load_pipeline(
            args.cnf,
            config,
            circuit_path=args.circuit,
            use_cache=config.app.cache_transforms and not args.no_cache,
        )
    except InputError as e:
        _echo(f"Error: {e}")
        return ExitCode.PARSE

    solutions, stats = GradientSampler(cnf, circuit, result, config=sampler_config).run()
    if args.out is None:
        for assignment in solutions:
            sys.stdout.write(format_solution(assignment) + "\n")
        sys.stdout.flush()
    else:
        write_solutions(solutions, args.out)
    if args.stats_json:
        _write_json(args.stats_json, stats.to_dict())

    _echo(
        f"{stats.unique_count} unique solutions in {stats.wall_time:.3f}s "
        f"({stats.throughput:.1f}/s, {stats.attempts} rows, {stats.restarts} restarts)"
    )
    if result.is_unsat:
        _echo(stats.diagnostic)
        return ExitCode.UNSAT
    if stats.timed_out and not stats.quota_met:
        _echo(f"Timeout after {sampler_config.timeout}s with {stats.unique_count} solutions")
        return ExitCode.TIMEOUT
    if not stats.quota_met:
        logger.warning(
            f"Quota of {sampler_config.max_solutions} not met "
            f"({stats.unique_count} solutions after the iteration budget)"
        )
    return ExitCode.OK


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    """
    Check that every solution satisfies the CNF and no line repeats.

    Prints the first offending solution and returns 5 on failure.
    """
    try:
        cnf = _load_cnf(args.cnf)
        assignments = read_solutions(args.solutions, cnf.num_vars)
    except InputError as e:
        _echo(f"Error: {e}")
        return ExitCode.PARSE
    except OSError as e:
        _echo(f"Error: Cannot read {args.solutions}: {e}")
        return ExitCode.PARSE
    except SamplerError as e:
        _echo(f"Error: {args.solutions}: {e}")
        return ExitCode.PARSE

    matrix = ClauseMatrix(cnf)
    seen = set()
    for index, assignment in enumerate(assignments, start=1):
        if not eval_cnf(cnf, assignment):
            violated = matrix.first_violated_clause(assignment.values)
            clause = " ".join(str(v) for v in cnf.clauses[violated].to_ints())
            _echo(f"Solution {index} does not satisfy the formula: {format_solution(assignment)}")
            _echo(f"  violated clause {violated + 1}: {clause} 0")
            return ExitCode.VERIFY_FAILED
        key = dedupe_key(assignment)
        if key in seen:
            _echo(f"Solution {index} is a duplicate: {format_solution(assignment)}")
            return ExitCode.VERIFY_FAILED
        seen.add(key)
    _echo(f"{len(assignments)} solutions verified")
    return ExitCode.OK


def _parse_list(text: str, kind: type) -> List[Any]:
    try:
        return [kind(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"Invalid list '{text}'")


def _open_csv(path: Optional[str]) -> TextIO:
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", newline="", encoding="utf-8")


def cmd_bench(args: argparse.Namespace, config: Config) -> int:
    """
    Run the sampler over the Cartesian product of --batch, --iters and --lr
    lists and write one CSV row per sweep point; --curve adds one row per
    harvest point.
    """
    try:
        batches = _parse_list(args.batch, int)
        iterations = _parse_list(args.iters, int)
        rates = _parse_list(args.lr, float)
    except ValueError as e:
        _echo(f"Error: {e}")
        return ExitCode.USAGE
    if not batches or not iterations or not rates:
        _echo("Error: sweep lists must not be empty")
        return ExitCode.USAGE

    try:
        cnf, circuit, result = load_pipeline(
            args.cnf, config, use_cache=config.app.cache_transforms and not args.no_cache
        )
    except InputError as e:
        _echo(f"Error: {e}")
        return ExitCode.PARSE
    if result.is_unsat:
        _echo(f"UNSAT by construction: {result.unsat_reason}")
        return ExitCode.UNSAT

    points = []
    for batch, iters, rate in itertools.product(batches, iterations, rates):
        sampler_config = dataclasses.replace(
            config.sampler,
            batch_size=batch,
            iterations=iters,
            learning_rate=rate,
            max_solutions=args.quota,
            timeout=args.timeout if args.timeout is not None else config.sampler.timeout,
            seed=args.seed if args.seed is not None else config.sampler.seed,
        )
        try:
            sampler_config.validate()
        except ValueError as e:
            _echo(f"Error: {e}")
            return ExitCode.USAGE
        _, stats = GradientSampler(cnf, circuit, result, config=sampler_config).run()
        points.append((sampler_config, stats))
        _echo(
            f"batch={batch} iters={iters} lr={rate}: {stats.unique_count} unique "
            f"in {stats.wall_time:.3f}s"
        )

    stream = _open_csv(args.out)
    try:
        writer = csv.writer(stream)
        writer.writerow(["quota", "batch", "iters", "lr", "unique", "seconds", "throughput", "quota_met"])
        for sampler_config, stats in points:
            writer.writerow([
                sampler_config.max_solutions,
                sampler_config.batch_size,
                sampler_config.iterations,
                sampler_config.learning_rate,
                stats.unique_count,
                f"{stats.wall_time:.6f}",
                f"{stats.throughput:.3f}",
                int(stats.quota_met),
            ])
    finally:
        if stream is not sys.stdout:
            stream.close()

    if args.curve:
        with open(args.curve, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["batch", "iters", "lr", "harvest", "new_unique", "cumulative_unique"])
            for sampler_config, stats in points:
                for harvest, (new, total) in enumerate(
                    zip(stats.new_unique_per_iteration, stats.cumulative_unique)
                ):
                    writer.writerow([
                        sampler_config.batch_size,
                        sampler_config.iterations,
                        sampler_config.learning_rate,
                        harvest,
                        new,
                        total,
                    ])
    return ExitCode.OK
