# modules/cli/main.py

"""
Command-line front end.

    leibniz-lab [--pretty] [--seed N] [--log-level L] [--log-file F]
                [--config FILE] <command> ...

Every command prints one JSON run report on stdout. Exit status is 0 when
all checks pass, 1 when a check fails and 2 on usage or input errors.
Scalars on the command line and in files are exact ``p/q`` strings.
"""

import argparse
import json
import os
import random
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import yaml

from modules.cli.report import RunReport
from modules.constructions.builders import direct_sum, make_heisenberg_h1, make_n_n1, make_Q2n
from modules.core import config
from modules.core.algebra import (
    derived_series,
    graded_normal_form,
    is_filiform,
    is_lie,
    is_naturally_graded_iso,
    is_nilpotent,
    lower_central_series,
    natural_gradation,
    series_dims,
)
from modules.core.errors import LeibnizLabError, ParameterError, SchemaError
from modules.core.serialization import action_to_dict, dumps, load_tensor, save_tensor, tensor_to_dict
from modules.fock.fock_module import build_FR, build_FR_direct_sum
from modules.mu_family.classification import (
    PUBLISHED_COUNT,
    catalogue_differences,
    load_published_catalogue,
    mu4_catalogue,
    mu4_is_isomorphic,
    mu4_normalize,
    mu4_signature,
)
from modules.mu_family.general import (
    GeneralParams,
    general_table,
    random_params,
    sample_constrained_params,
)
from modules.mu_family.mu4 import PARAMETER_NAMES, MuParams, mu4_table
from modules.utils.logger import CustomLogger, apply_logging_settings
from modules.validation.validator import AlgebraValidator

logger = CustomLogger("cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

DEFAULT_CONFIG_PATH = "config/leibniz_lab.json"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors instead of exiting."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _mu_params(text: str) -> MuParams:
    try:
        return MuParams.parse(text)
    except LeibnizLabError as e:
        raise argparse.ArgumentTypeError(str(e))


def _write_json(document: Dict[str, Any], filepath: str, pretty: bool) -> str:
    directory = os.path.dirname(filepath)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(dumps(document, pretty))
        f.write("\n")
    logger.info(f"Wrote {filepath}")
    return filepath


def _require_n(args, what: str) -> int:
    if args.n is None:
        raise ParameterError(f"{what} needs --n")
    return args.n


# ---------------------------------------------------------------------------
# Commands. Each returns (result, artifacts); checks go to the validator.
# ---------------------------------------------------------------------------

def _construct(args, validator: AlgebraValidator):
    if args.family == "n_n1":
        T = make_n_n1(_require_n(args, "n_n1"))
    elif args.family == "Q2n":
        T = make_Q2n(_require_n(args, "Q2n"))
    elif args.family == "H1":
        T = make_heisenberg_h1()
    else:
        if not args.parts:
            raise ParameterError("direct-sum needs --parts")
        T = direct_sum([make_n_n1(n) for n in args.parts])
    artifacts = [save_tensor(T, args.out, args.pretty)] if args.out else []
    return tensor_to_dict(T), artifacts


def _verify(args, validator: AlgebraValidator):
    T = load_tensor(args.in_path)
    validator.validate_tensor(T)
    return {"dim": T.dim, "lower_central_series": list(series_dims(lower_central_series(T)))}, []


def _series(args, validator: AlgebraValidator):
    T = load_tensor(args.in_path)
    return {
        "dim": T.dim,
        "lower_central_series": list(series_dims(lower_central_series(T))),
        "derived_series": list(series_dims(derived_series(T))),
        "nilpotent": is_nilpotent(T),
        "filiform": is_filiform(T),
        "lie": is_lie(T),
    }, []


def _gradation(args, validator: AlgebraValidator):
    T = load_tensor(args.in_path)
    graded = natural_gradation(T)
    result = {
        "layer_dims": list(graded.layer_dims),
        "graded": tensor_to_dict(graded.induced),
        "same_table": graded.induced.same_brackets(T),
    }
    if is_lie(T) and is_filiform(T):
        result["normal_form"] = graded_normal_form(T)
        result["naturally_graded"] = is_naturally_graded_iso(T)
    artifacts = [save_tensor(graded.induced, args.out, args.pretty)] if args.out else []
    return result, artifacts


def _fock(args, validator: AlgebraValidator):
    dims = args.parts or [_require_n(args, "fock")]
    degree = args.degree if args.degree is not None else config.fock_default_degree_factor * max(dims)
    F = build_FR(dims[0], degree) if len(dims) == 1 else build_FR_direct_sum(dims, degree)
    _, overflow = F.window_tensor()
    if args.verify:
        validator.check_fock_window(F)
        validator.check_fock_ideal(F)
        validator.check_fock_quotient(F)
    result = {
        "block_dims": list(F.block_dims),
        "degree": degree,
        "safe_degree": F.safe_degree,
        "dim": F.dim,
        "finite_dim": F.finite_dim,
        "overflow_pairs": len(overflow),
    }
    artifacts = []
    if args.out:
        document = {
            "block_dims": list(F.block_dims),
            "degree": degree,
            "safe_degree": F.safe_degree,
            "finite_part": tensor_to_dict(F.finite_part),
            "mixed_action": action_to_dict(F.mixed_action),
        }
        artifacts.append(_write_json(document, args.out, args.pretty))
    return result, artifacts


def _load_params_file(filepath: str) -> Dict[str, Any]:
    if not os.path.exists(filepath):
        logger.error(f"Parameter file not found: {filepath}")
        raise FileNotFoundError(f"Missing parameter file at {filepath}")
    with open(filepath, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        if filepath.endswith((".yaml", ".yml")):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise SchemaError(f"Cannot parse {filepath}: {e}")
    if not isinstance(data, dict):
        raise SchemaError(f"{filepath} must hold a mapping")
    return data


def _general(args, validator: AlgebraValidator):
    if args.params_file:
        data = _load_params_file(args.params_file)
        if args.n is not None:
            data.setdefault("n", args.n)
            if data["n"] != args.n:
                raise ParameterError(f"--n {args.n} disagrees with n = {data['n']} in {args.params_file}")
        p = GeneralParams.from_dict(data)
    else:
        n = _require_n(args, "general")
        rng = random.Random(args.seed)
        p = sample_constrained_params(n, rng) if args.sample == "constrained" else random_params(n, rng)
    T = general_table(p, verbatim=args.verbatim)
    if args.check_constraints:
        validator.check_constraints(p, verbatim=args.verbatim)
    if args.oracle:
        validator.check_oracle(p, verbatim=args.verbatim)
    artifacts = [save_tensor(T, args.out, args.pretty)] if args.out else []
    return {"params": p.to_dict(), "table": tensor_to_dict(T)}, artifacts


def _mu4_table(args, validator: AlgebraValidator):
    return tensor_to_dict(mu4_table(args.params, verbatim=args.verbatim)), []


def _mu4_verify(args, validator: AlgebraValidator):
    validator.check_mu4(args.params, verbatim=args.verbatim)
    return {"params": args.params.to_list(), "signature": mu4_signature(args.params)}, []


def _mu4_normalize(args, validator: AlgebraValidator):
    form = mu4_normalize(args.params)
    validator.check_witness(args.params, form.witness, form.representative)
    return {
        "params": args.params.to_list(),
        "representative": form.representative.to_list(),
        "family": form.family.key,
        "family_index": form.family_index,
        "listed_in_published_table": form.listed_in_published_table,
        "root_degree": form.root_degree,
        "root_slot": form.root_slot,
        "witness": form.witness.to_list(),
    }, []


def _mu4_iso(args, validator: AlgebraValidator):
    witness = mu4_is_isomorphic(args.left, args.right)
    return {
        "left": args.left.to_list(),
        "right": args.right.to_list(),
        "isomorphic": witness is not None,
        "witness": witness.to_list() if witness is not None else None,
    }, []


def _mu4_catalogue(args, validator: AlgebraValidator):
    published = load_published_catalogue()
    differences = catalogue_differences(published)
    if any(differences.values()):
        logger.warning(
            f"Published table differs from the corrected catalogue: "
            f"{len(differences['superseded'])} superseded, {len(differences['added'])} added"
        )
    families = [
        {
            "index": index,
            "family": family.key,
            "listed_in_published_table": family.listed_in_published_table,
            "root_slot": None if family.class_slot is None else PARAMETER_NAMES[family.class_slot],
            "root_degree": family.root_degree,
        }
        for index, family in enumerate(mu4_catalogue(), start=1)
    ]
    return {"published_count": PUBLISHED_COUNT, "families": families, "differences": differences}, []


def _export(args, validator: AlgebraValidator):
    T = load_tensor(args.in_path)
    return {"dim": T.dim}, [save_tensor(T, args.out, args.pretty)]


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leibniz-lab", description="Exact Leibniz algebra constructions and checks")
    parser.add_argument("--pretty", action="store_true", help="Indent JSON output")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"Seed for randomized sampling (default: {config.default_seed})")
    parser.add_argument("--log-level", type=str, default=None,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="Logging level (default from configuration)")
    parser.add_argument("--log-file", type=str, default=None, help="Also log to this file")
    parser.add_argument("--config", type=str, default=DEFAULT_CONFIG_PATH,
                        help=f"Configuration file, applied when present (default: {DEFAULT_CONFIG_PATH})")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    construct = commands.add_parser("construct", help="Build a named algebra")
    construct.add_argument("--family", required=True, choices=["n_n1", "Q2n", "H1", "direct-sum"])
    construct.add_argument("--n", type=int, help="Dimension of n_n1, half the dimension of Q2n")
    construct.add_argument("--parts", type=_int_list, help="Block dimensions for direct-sum, e.g. 4,3")
    construct.add_argument("--out", type=str, help="Write the tensor to this file")
    construct.set_defaults(handler=_construct)

    for name, handler, help_text in (
        ("verify", _verify, "Leibniz, antisymmetry, Lie, nilpotent and filiform checks"),
        ("series", _series, "Lower central and derived series"),
        ("gradation", _gradation, "Natural gradation"),
    ):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--in", dest="in_path", required=True, help="Tensor JSON file")
        if name == "gradation":
            sub.add_argument("--out", type=str, help="Write the graded tensor to this file")
        sub.set_defaults(handler=handler)

    fock = commands.add_parser("fock", help="Truncated FR algebra of n_n1 or a direct sum")
    fock.add_argument("--n", type=int, help="Dimension of n_n1")
    fock.add_argument("--parts", type=_int_list, help="Block dimensions, e.g. 5,4")
    fock.add_argument("--degree", type=int, help="Truncation degree (default: 3 max(n))")
    fock.add_argument("--verify", action="store_true", help="Run the windowed Leibniz, ideal and quotient checks")
    fock.add_argument("--out", type=str, help="Write finite part and mixed action to this file")
    fock.set_defaults(handler=_fock)

    general = commands.add_parser("general", help="2n-dimensional table of the general family")
    general.add_argument("--n", type=int)
    source = general.add_mutually_exclusive_group(required=True)
    source.add_argument("--params-file", type=str, help="JSON or YAML parameter document")
    source.add_argument("--sample", choices=["random", "constrained"], help="Draw parameters with --seed")
    general.add_argument("--check-constraints", action="store_true")
    general.add_argument("--oracle", action="store_true", help="Full identity scan (n <= 10)")
    general.add_argument(
        "--verbatim", action="store_true", help="Use the printed alpha_3 and beta_{n-2} coefficients"
    )
    general.add_argument("--out", type=str)
    general.set_defaults(handler=_general)

    mu4 = commands.add_parser("mu4", help="The eight-parameter family over n_4,1")
    mu4_commands = mu4.add_subparsers(dest="mu4_command", parser_class=_Parser)
    mu4_commands.required = True
    for name, handler in (("table", _mu4_table), ("verify", _mu4_verify), ("normalize", _mu4_normalize)):
        sub = mu4_commands.add_parser(name)
        sub.add_argument("--params", type=_mu_params, required=True, help="a1,a2,a3,a4,b1,b2,g1,g2")
        if name != "normalize":
            sub.add_argument("--verbatim", action="store_true", help="Use the table exactly as printed")
        sub.set_defaults(handler=handler)
    iso = mu4_commands.add_parser("iso")
    iso.add_argument("--left", type=_mu_params, required=True)
    iso.add_argument("--right", type=_mu_params, required=True)
    iso.set_defaults(handler=_mu4_iso)
    catalogue = mu4_commands.add_parser("catalogue")
    catalogue.set_defaults(handler=_mu4_catalogue)

    export = commands.add_parser("export", help="Re-emit a tensor in canonical form")
    export.add_argument("--in", dest="in_path", required=True)
    export.add_argument("--out", required=True)
    export.set_defaults(handler=_export)
    return parser


def _echo(args) -> Dict[str, Any]:
    echoed = {}
    for key, value in sorted(vars(args).items()):
        if key in ("handler", "config", "log_level", "log_file"):
            continue
        echoed[key] = str(value) if isinstance(value, MuParams) else value
    return echoed


def run(argv: Sequence[str]) -> Tuple[int, Optional[RunReport]]:
    """
    Parse ``argv``, run the command and print its report on stdout.

    Returns:
        (exit code, report); the report is None on usage errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE, None

    try:
        config.load_config_from_file(args.config)
    except SchemaError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE, None
    if args.log_level or args.log_file:
        config.update_config({k: v for k, v in (("log_level", args.log_level), ("log_file", args.log_file)) if v})
    apply_logging_settings(config.log_level, config.log_file)
    if args.seed is None:
        args.seed = config.default_seed

    command = args.command if args.command != "mu4" else f"mu4 {args.mu4_command}"
    report = RunReport(command, _echo(args))
    validator = AlgebraValidator(workers=config.max_workers)
    try:
        report.result, report.artifacts = args.handler(args, validator)
    except (LeibnizLabError, FileNotFoundError) as e:
        logger.error(f"{command}: {e}")
        report.result = {"error": str(e), "error_type": type(e).__name__}
        print(report.to_json(args.pretty))
        return EXIT_USAGE, report
    report.checks = list(validator.results)
    print(report.to_json(args.pretty))
    code = EXIT_OK if report.passed else EXIT_CHECK_FAILED
    logger.info(f"{command}: {len(report.checks)} checks, exit {code}")
    return code, report


def main() -> None:
    code, _ = run(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
