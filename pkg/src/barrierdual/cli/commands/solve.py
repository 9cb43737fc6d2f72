import barrierdual.cli.utils as CliUtils
import barrierdual.utils as BdUtils
from barrierdual import defaults
from barrierdual.errors import InvalidConfig
from barrierdual.primal import CaseTag, PrimalOutcome, classify_and_solve, duality_gap_certificate


def require_instance(args):
    if args.x0 is None or args.T is None:
        raise InvalidConfig(f"'{args.command}' needs both --x0 and --T (or the same keys in --config)")
    x0 = CliUtils.require_between("x0", args.x0, min_val=0.0)
    T = CliUtils.require_between("T", args.T, min_val=0.0)
    return x0, T


def outcome_to_dict(outcome: PrimalOutcome) -> dict:
    report = {
        "case_tag": outcome.case_tag.value,
        "x0": outcome.x0,
        "T": outcome.constraint.T,
        "K_T": outcome.constraint.kT,
        "value": outcome.value.serialize(),
        "lambda_star": outcome.lambda_star,
        "b_star": outcome.b_star,
        "slack": outcome.slack,
        "attained": outcome.attained,
        "horizon_threshold": outcome.horizon_threshold,
    }
    if outcome.case_tag is CaseTag.DO_NOTHING:
        report["note"] = "value is the limit of barrier strategies as b -> infinity and is not attained"
    return report


def solve_entrypoint(args, context) -> int:
    params = CliUtils.build_params(args)
    x0, T = require_instance(args)
    search_tol = CliUtils.require_between(
        "search-tol", args.search_tol if args.search_tol is not None else defaults.SEARCH_TOL, min_val=0.0
    )

    BdUtils.print_info(f"[INFO]: Solving x0={x0}, T={T}...")
    outcome = classify_and_solve(params, x0, T)
    report = {"params": params.to_dict(), **outcome_to_dict(outcome), "certificate": None}

    if outcome.solvable:
        gap = duality_gap_certificate(params, x0, T, search_tol=search_tol, outcome=outcome)
        report["certificate"] = {
            "primal_value": gap.primal_value,
            "dual_minimum": gap.dual_minimum,
            "minimizer": gap.minimizer,
            "gap": gap.gap,
            "complementary_slackness": gap.slackness,
            "search_tol": gap.search_tol,
            "certified": gap.certified,
        }
        if not gap.certified:
            BdUtils.print_warning(f"[WARN]: Duality gap {gap.gap} exceeds {search_tol}")

    CliUtils.write_json(report, args.out)
    BdUtils.print_success(f"[DONE]: {outcome.case_tag.value}")
    return 0
