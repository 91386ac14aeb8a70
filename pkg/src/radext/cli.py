"""Command-line interface: check, oracle, fuzz, irred.

Radicals are written as N:m tokens (N a nonzero integer or num/den fraction,
m a positive integer).  The structured report goes to standard output as a
single JSON document with deterministic serialization; human prose goes to
standard error under --explain.  Exit codes: 0 ok, 1 input error, 2
--assert-full failed, 3 criterion/oracle disagreement, 4 fuzz mismatch.
"""

from __future__ import annotations

import json
import re
import sys
from fractions import Fraction

from . import __version__
from .criteria import (
    DecisionReport,
    EvenDefect,
    PrimeEvidence,
    PthPowerWitness,
    RadicalTower,
    binomial_irreducibility,
    build_tower,
    decide_full_degree,
)
from .errors import CapacityError, DomainError, UnsupportedInputError
from .etale import build_algebra, is_field
from .fuzzing import FuzzBounds, run_fuzz
from .polyfactor import binomial_poly, factor_over_Q

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_ASSERT_FULL = 2
EXIT_DISAGREEMENT = 3
EXIT_FUZZ_MISMATCH = 4

MAX_EVEN_ENTRIES = 12
MAX_ODD_ENTRIES = 8

_TOKEN_RE = re.compile(r"^[+-]?\d+(?:/\d+)?:\d+$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")

_GLOBAL_FLAGS = {"--json": False, "--explain": False, "--seed": True, "--max-dim": True}
_COMMAND_FLAGS = {
    "check": {"--assert-full": False},
    "oracle": {},
    "fuzz": {"--count": True, "--max-ell": True, "--max-m": True, "--max-abs-n": True},
    "irred": {"--factor": False},
}

USAGE = """\
usage: radext <command> [tokens] [flags]

commands:
  check N:m [N:m ...]    decide whether the stacked radicals reach full degree
  oracle N:m [N:m ...]   verify by exact computation in the quotient algebra
  fuzz                   random cross-check of the criterion against the oracle
  irred n a              irreducibility of x^n - a, with optional factorization

tokens:
  N:m with N a nonzero integer or fraction (e.g. -1:4, 2:4, 3/2:2)

global flags:
  --json        structured output only (suppress prose)
  --explain     write human-readable explanations to standard error
  --seed U64    seed for randomized steps (default 0)
  --max-dim N   dimension cap for the oracle (default 32; above 32 is slow)

command flags:
  check: --assert-full        exit 2 when the degree is not full
  fuzz:  --count N --max-ell N --max-m N --max-abs-n N
  irred: --factor             also factor x^n - a and check agreement
"""


class _CliError(Exception):
    pass


def _parse_args(cmd: str, args: list[str]) -> tuple[dict, list[str]]:
    flags = dict(_GLOBAL_FLAGS)
    flags.update(_COMMAND_FLAGS[cmd])
    values: dict[str, object] = {}
    positional: list[str] = []
    i = 0
    while i < len(args):
        arg = args[i]
        if arg in flags:
            if flags[arg]:
                if i + 1 >= len(args):
                    raise _CliError(f"flag {arg} needs a value")
                raw = args[i + 1]
                try:
                    values[arg] = int(raw)
                except ValueError:
                    raise _CliError(f"flag {arg} needs an integer value, got {raw!r}")
                i += 2
            else:
                values[arg] = True
                i += 1
        elif arg.startswith("--"):
            raise _CliError(f"unknown flag {arg}")
        else:
            positional.append(arg)
            i += 1
    return values, positional


def _emit(doc: dict, json_only: bool, explain: bool, prose: list[str]) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if explain and not json_only:
        for line in prose:
            sys.stderr.write(line + "\n")


def _warn(message: str, json_only: bool) -> None:
    if not json_only:
        sys.stderr.write(message + "\n")


def _parse_tokens(tokens: list[str]) -> list[tuple[Fraction, int]]:
    entries = []
    for tok in tokens:
        if not _TOKEN_RE.match(tok):
            raise _CliError(f"malformed radical token {tok!r}; expected N:m")
        n_text, m_text = tok.rsplit(":", 1)
        entries.append((Fraction(n_text), int(m_text)))
    return entries


def _check_enumeration_caps(tower: RadicalTower) -> None:
    for p in tower.prime_support:
        count = sum(1 for _, m in tower.entries if m % p == 0)
        cap = MAX_EVEN_ENTRIES if p == 2 else MAX_ODD_ENTRIES
        if count > cap:
            raise _CliError(
                f"{count} entries share the prime {p}; the enumeration cap is {cap}"
            )


def _fr_json(x) -> str:
    return str(x.value())


def _tower_json(tower: RadicalTower) -> list[dict]:
    return [{"n": _fr_json(n), "m": m} for n, m in tower.entries]


def _witness_json(w: PthPowerWitness) -> dict:
    indices = [w.view.indices[j] + 1 for j in range(len(w.element.exponents))]
    return {
        "indices": indices,
        "exponents": list(w.element.exponents),
        "value": _fr_json(w.element.value),
        "root": _fr_json(w.root),
    }


def _defect_json(d: EvenDefect) -> dict:
    square_condition = None
    if d.spe_witness is not None:
        w = d.spe_witness
        square_condition = {
            "i": d.view.indices[w.i] + 1,
            "sign": w.sign,
            "exponents": {str(d.view.indices[j] + 1): e for j, e in w.exponents},
            "root": _fr_json(w.root),
        }
    return {
        "m_value": _fr_json(d.m_value),
        "d": _fr_json(d.d),
        "f": list(d.f),
        "m_sharp": [d.view.indices[j] + 1 for j in d.m_sharp],
        "four_divides": d.four_divides,
        "defective": d.defective,
        "square_condition": square_condition,
    }


def _per_prime_json(ev: PrimeEvidence) -> dict:
    return {
        "p": ev.p,
        "indices": [i + 1 for i in ev.view.indices],
        "local_m": list(ev.view.local_m),
        "status": ev.status,
        "witness": _witness_json(ev.witness) if ev.witness is not None else None,
        "defect": _defect_json(ev.defect) if ev.defect is not None else None,
    }


def _base_doc(command: str, seed: int) -> dict:
    return {"tool": "radext", "version": __version__, "command": command, "seed": seed}


def _report_doc(report: DecisionReport, command: str, seed: int) -> dict:
    doc = _base_doc(command, seed)
    doc.update(
        {
            "tower": _tower_json(report.tower),
            "product_degree": report.product_degree,
            "full_degree": report.full_degree,
            "per_prime": [_per_prime_json(ev) for ev in report.per_prime],
            "notes": list(report.notes),
        }
    )
    return doc


def _explain_lines(report: DecisionReport) -> list[str]:
    lines = [
        f"verdict: the degree is {'the full product ' + str(report.product_degree) if report.full_degree else 'strictly below ' + str(report.product_degree)}"
    ]
    lines.extend(report.notes)
    if any(ev.defect is not None for ev in report.per_prime):
        lines.append(
            "note: the compensating-square search ranges over exponents e_j in {0, 1}."
        )
    return lines


def _cmd_check(args: list[str]) -> int:
    values, tokens = _parse_args("check", args)
    if not tokens:
        raise _CliError("check needs at least one N:m token")
    entries = _parse_tokens(tokens)
    tower = build_tower(entries)
    _check_enumeration_caps(tower)
    report = decide_full_degree(tower)
    seed = values.get("--seed", 0)
    doc = _report_doc(report, "check", seed)
    _emit(doc, values.get("--json", False), values.get("--explain", False), _explain_lines(report))
    if values.get("--assert-full", False) and not report.full_degree:
        return EXIT_ASSERT_FULL
    return EXIT_OK


def _cmd_oracle(args: list[str]) -> int:
    values, tokens = _parse_args("oracle", args)
    if not tokens:
        raise _CliError("oracle needs at least one N:m token")
    entries = _parse_tokens(tokens)
    tower = build_tower(entries)
    _check_enumeration_caps(tower)
    seed = values.get("--seed", 0)
    max_dim = values.get("--max-dim", 32)
    json_only = values.get("--json", False)
    if max_dim > 32:
        _warn(
            f"warning: --max-dim {max_dim} enables dimensions above 32; expect long runtimes",
            json_only,
        )
    report = decide_full_degree(tower)
    result = is_field(build_algebra(tower, max_dim=max_dim), seed=seed)
    agreement = report.full_degree == result.is_field
    doc = _base_doc("oracle", seed)
    doc.update(
        {
            "tower": _tower_json(tower),
            "product_degree": report.product_degree,
            "criterion_full_degree": report.full_degree,
            "oracle": {
                "dim": result.generator.algebra.dim,
                "is_field": result.is_field,
                "factor_degrees": list(result.factor_degrees),
                "generator": [str(c) for c in result.generator_coefficients],
                "minpoly": [str(c) for c in result.minpoly],
                "retries": result.retries_used,
            },
            "agreement": agreement,
        }
    )
    prose = [
        f"oracle: the quotient algebra has dimension {result.generator.algebra.dim} and "
        f"{'is a field' if result.is_field else 'splits with factor degrees ' + str(list(result.factor_degrees))}.",
        f"criterion and oracle {'agree' if agreement else 'DISAGREE'}.",
    ]
    _emit(doc, json_only, values.get("--explain", False), prose)
    if not agreement:
        _warn("error: criterion and oracle disagree; this signals a bug", json_only)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _cmd_fuzz(args: list[str]) -> int:
    values, tokens = _parse_args("fuzz", args)
    if tokens:
        raise _CliError(f"fuzz takes no positional arguments, got {tokens!r}")
    seed = values.get("--seed", 0)
    count = values.get("--count", 100)
    bounds = FuzzBounds(
        max_ell=values.get("--max-ell", 3),
        max_m=values.get("--max-m", 8),
        max_abs_n=values.get("--max-abs-n", 30),
        max_dim=values.get("--max-dim", 24),
    )
    if count < 0:
        raise _CliError("--count must be nonnegative")
    report = run_fuzz(count, seed, bounds)
    json_only = values.get("--json", False)
    doc = _base_doc("fuzz", seed)
    doc.update(
        {
            "count": count,
            "max_ell": bounds.max_ell,
            "max_m": bounds.max_m,
            "max_abs_n": bounds.max_abs_n,
            "max_dim": bounds.max_dim,
            "instances": len(report.records),
            "agreements": sum(1 for r in report.records if r.agrees),
            "full_degree_count": report.full_degree_count,
            "mismatch": None,
        }
    )
    if not report.clean:
        failed = report.records[-1]
        reproduce = (
            f"radext fuzz --count 1 --seed {failed.seed} --max-ell {bounds.max_ell} "
            f"--max-m {bounds.max_m} --max-abs-n {bounds.max_abs_n} --max-dim {bounds.max_dim}"
        )
        tokens_text = " ".join(f"{n}:{m}" for n, m in failed.entries)
        doc["mismatch"] = {
            "index": failed.index,
            "seed": failed.seed,
            "tower": [{"n": str(n), "m": m} for n, m in failed.entries],
            "criterion_full_degree": failed.full_degree,
            "oracle_is_field": failed.is_field,
            "factor_degrees": list(failed.factor_degrees),
            "invariant_failures": list(report.invariant_failures),
            "reproduce": reproduce,
        }
        _emit(doc, json_only, values.get("--explain", False), [])
        _warn(f"mismatch on instance {failed.index}: {tokens_text}", json_only)
        _warn(f"reproduce with: {reproduce}", json_only)
        return EXIT_FUZZ_MISMATCH
    prose = [f"{len(report.records)} instances, all agreeing with the oracle."]
    _emit(doc, json_only, values.get("--explain", False), prose)
    return EXIT_OK


def _cmd_irred(args: list[str]) -> int:
    values, tokens = _parse_args("irred", args)
    if len(tokens) != 2:
        raise _CliError("irred needs exactly two arguments: n and a")
    n_text, a_text = tokens
    if not n_text.isdigit() or int(n_text) < 1:
        raise _CliError(f"n must be a positive integer, got {n_text!r}")
    if not _RATIONAL_RE.match(a_text):
        raise _CliError(f"a must be a nonzero integer or fraction, got {a_text!r}")
    n = int(n_text)
    a = Fraction(a_text)
    verdict = binomial_irreducibility(n, a)
    clause = None
    prose = []
    if verdict.prime_obstruction is not None:
        p, root = verdict.prime_obstruction
        clause = {"kind": "prime_power", "p": p, "root": str(root.value())}
        prose.append(f"reducible: a = ({root})^{p} is a perfect {p}-th power and {p} divides n.")
    elif verdict.minus_four_obstruction is not None:
        c = verdict.minus_four_obstruction
        clause = {"kind": "minus_four_fourth", "c": str(c.value())}
        prose.append(f"reducible: 4 divides n and a = -4*({c})^4.")
    else:
        prose.append("irreducible: a avoids every p-th power class for p | n, and the -4c^4 class.")
    seed = values.get("--seed", 0)
    doc = _base_doc("irred", seed)
    doc.update(
        {
            "n": n,
            "a": str(a),
            "irreducible": verdict.irreducible,
            "clause": clause,
            "factorization": None,
        }
    )
    if values.get("--factor", False):
        result = factor_over_Q(binomial_poly(n, a))
        doc["factorization"] = {
            "unit": str(result.unit),
            "factors": [
                {
                    "coeffs": [str(c) for c in poly.coeffs],
                    "degree": poly.degree,
                    "multiplicity": mult,
                }
                for poly, mult in result.factors
            ],
        }
        prose.append(
            "factorization: "
            + " * ".join(
                f"({poly})" + (f"^{mult}" if mult > 1 else "")
                for poly, mult in result.factors
            )
        )
        if result.is_irreducible() != verdict.irreducible:
            _emit(doc, values.get("--json", False), values.get("--explain", False), prose)
            _warn("error: criterion and factorization disagree; this signals a bug", values.get("--json", False))
            return EXIT_DISAGREEMENT
    _emit(doc, values.get("--json", False), values.get("--explain", False), prose)
    return EXIT_OK


_COMMANDS = {
    "check": _cmd_check,
    "oracle": _cmd_oracle,
    "fuzz": _cmd_fuzz,
    "irred": _cmd_irred,
}


def main(argv: list[str] | None = None) -> int:
    args = list(sys.argv[1:]) if argv is None else list(argv)
    if not args or args[0] in ("-h", "--help"):
        sys.stdout.write(USAGE)
        return EXIT_OK
    if args[0] == "--version":
        sys.stdout.write(f"radext {__version__}\n")
        return EXIT_OK
    command = args[0]
    handler = _COMMANDS.get(command)
    if handler is None:
        sys.stderr.write(f"error: unknown command {command!r}\n\n{USAGE}")
        return EXIT_INPUT
    try:
        return handler(args[1:])
    except (_CliError, DomainError, UnsupportedInputError, CapacityError) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
