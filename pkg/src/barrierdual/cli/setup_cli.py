import argparse
import barrierdual.cli.router as CMD_ROUTER
import barrierdual.utils as BdUtils
from barrierdual import defaults


# model parameters, config file and output flags shared by every subcommand
def add_common_arguments(parser, table: bool = True):
    parser.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        help=f"Claim arrival rate (default {defaults.BASE_PARAMS['lambda']})",
        required=False,
    )

    parser.add_argument(
        "--c",
        type=float,
        help=f"Premium rate (default {defaults.BASE_PARAMS['c']})",
        required=False,
    )

    parser.add_argument(
        "--alpha",
        type=float,
        help=f"Rate of the exponential claim sizes (default {defaults.BASE_PARAMS['alpha']})",
        required=False,
    )

    parser.add_argument(
        "--delta",
        type=float,
        help=f"Discount rate (default {defaults.BASE_PARAMS['delta']})",
        required=False,
    )

    parser.add_argument(
        "--config",
        type=str,
        help="YAML (or JSON) file whose keys mirror the flag names; flags given on the command line win",
        required=False,
    )

    parser.add_argument(
        "--out",
        "-o",
        type=str,
        help="Write the result to this file instead of stdout",
        required=False,
    )

    if table:
        parser.add_argument(
            "--format",
            type=str,
            choices=["csv", "json"],
            help="Output format of the table (default csv)",
            required=False,
        )

        parser.add_argument(
            "--gnuplot",
            type=str,
            help="Also write a gnuplot script plotting the table (requires --out)",
            required=False,
        )


# set up the "solve" subcommand parser
def setup_solve_parser(subparsers) -> callable:
    solve_parser = subparsers.add_parser(
        "solve",
        description=(
            "Classify and solve the constrained dividend problem for one (x0, T).\n\n"
            "Prints a JSON object with case_tag, value, lambda_star, b_star, slack,\n"
            "attained, horizon_threshold and, for solvable cases, a duality certificate."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Solve the constrained problem for one initial surplus and horizon",
        add_help=True,
    )

    solve_parser.add_argument("--x0", type=float, help="Initial surplus", required=False)
    solve_parser.add_argument("--T", type=float, help="Survival horizon", required=False)

    solve_parser.add_argument(
        "--search-tol",
        type=float,
        help="Tolerance of the duality gap certificate (default 1e-6)",
        required=False,
    )

    add_common_arguments(solve_parser, table=False)
    return solve_parser


# set up the "barrier-map" subcommand parser
def setup_barrier_map_parser(subparsers) -> callable:
    barrier_map_parser = subparsers.add_parser(
        "barrier-map",
        description=(
            "Optimal barrier of the Lagrangian problem for each multiplier.\n\n"
            "Columns: lambda, barrier, regime"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Tabulate the multiplier -> barrier map",
        add_help=True,
    )

    barrier_map_parser.add_argument(
        "--lambda-grid",
        type=str,
        help=f"Multipliers, 'lo:hi:n' or comma separated (default {defaults.LAMBDA_GRID})",
        required=False,
    )

    add_common_arguments(barrier_map_parser)
    return barrier_map_parser


# set up the "psi-curve" subcommand parser
def setup_psi_curve_parser(subparsers) -> callable:
    psi_curve_parser = subparsers.add_parser(
        "psi-curve",
        description=(
            "Discounted ruin-time functional of barrier strategies.\n\n"
            "Columns: x, then psi_b<b> for every barrier, then psi_hat"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Tabulate psi_b(x) for a list of barriers",
        add_help=True,
    )

    psi_curve_parser.add_argument(
        "--b-list",
        type=str,
        help=f"Barriers, comma separated (default {defaults.B_LIST})",
        required=False,
    )

    psi_curve_parser.add_argument(
        "--x-grid",
        type=str,
        help=f"Surplus levels, 'lo:hi:n' or comma separated (default {defaults.X_GRID})",
        required=False,
    )

    add_common_arguments(psi_curve_parser)
    return psi_curve_parser


# set up the "dual-curve" subcommand parser
def setup_dual_curve_parser(subparsers) -> callable:
    dual_curve_parser = subparsers.add_parser(
        "dual-curve",
        description=(
            "Dual value V_Lambda(x0) over a grid of multipliers.\n\n"
            "Columns: lambda, dual_value, barrier"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Tabulate the dual function at one initial surplus",
        add_help=True,
    )

    dual_curve_parser.add_argument("--x0", type=float, help="Initial surplus", required=False)
    dual_curve_parser.add_argument("--T", type=float, help="Survival horizon", required=False)

    dual_curve_parser.add_argument(
        "--lambda-grid",
        type=str,
        help=f"Multipliers, 'lo:hi:n' or comma separated (default {defaults.DUAL_LAMBDA_GRID})",
        required=False,
    )

    add_common_arguments(dual_curve_parser)
    return dual_curve_parser


# set up the "value-curve" subcommand parser
def setup_value_curve_parser(subparsers) -> callable:
    value_curve_parser = subparsers.add_parser(
        "value-curve",
        description=(
            "Unconstrained and constrained value functions for one horizon.\n\n"
            "Columns: x, unconstrained, constrained, case_tag\n"
            "The constrained value is -inf where the constraint cannot be met."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Tabulate value functions over initial surplus",
        add_help=True,
    )

    value_curve_parser.add_argument("--T", type=float, help="Survival horizon", required=False)

    value_curve_parser.add_argument(
        "--x-grid",
        type=str,
        help=f"Surplus levels, 'lo:hi:n' or comma separated (default {defaults.X_GRID})",
        required=False,
    )

    add_common_arguments(value_curve_parser)
    return value_curve_parser


# set up the "regions" subcommand parser
def setup_regions_parser(subparsers) -> callable:
    regions_parser = subparsers.add_parser(
        "regions",
        description=(
            "Case of the constrained problem on a grid of (x0, K_T).\n\n"
            "Columns: x0, K_T, T, case_tag, psi_free, psi_hat, inv_delta\n"
            "Every K_T must lie in [0, 1/delta); --t-grid gives horizons instead."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Tabulate the case regions",
        add_help=True,
    )

    regions_parser.add_argument(
        "--x-grid",
        type=str,
        help=f"Initial surplus levels (default {defaults.X_GRID})",
        required=False,
    )

    regions_parser.add_argument(
        "--k-grid",
        type=str,
        help="Discounted horizons K_T, 'lo:hi:n' or comma separated",
        required=False,
    )

    regions_parser.add_argument(
        "--t-grid",
        type=str,
        help=f"Horizons T, used when --k-grid is absent (default {defaults.T_GRID})",
        required=False,
    )

    add_common_arguments(regions_parser)
    return regions_parser


# set up the "simulate" subcommand parser
def setup_simulate_parser(subparsers) -> callable:
    simulate_parser = subparsers.add_parser(
        "simulate",
        description=(
            "Monte Carlo estimate of dividends and psi for one barrier strategy.\n\n"
            "Exits with 3 when --compare finds a |z| score above "
            f"{defaults.SIM_Z_FAIL:g}."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Simulate a barrier strategy",
        add_help=True,
    )

    simulate_parser.add_argument("--x0", type=float, help="Initial surplus", required=False)

    simulate_parser.add_argument(
        "--b",
        type=float,
        help="Barrier level (default: the unconstrained optimal barrier)",
        required=False,
    )

    simulate_parser.add_argument(
        "--T",
        type=float,
        help="Also estimate the constraint slack psi - K_T for this horizon",
        required=False,
    )

    simulate_parser.add_argument(
        "--n-paths",
        type=int,
        help=f"Number of simulated paths (default {defaults.SIM_N_PATHS})",
        required=False,
    )

    simulate_parser.add_argument(
        "--seed",
        type=int,
        help=f"Seed of the random streams (default {defaults.SIM_SEED})",
        required=False,
    )

    simulate_parser.add_argument(
        "--t-max",
        type=float,
        help=f"Truncation time (default {defaults.SIM_TMAX_FACTOR:g}/delta)",
        required=False,
    )

    simulate_parser.add_argument(
        "--compare",
        action=argparse.BooleanOptionalAction,
        help="Compare against the closed forms and report z-scores",
        required=False,
    )

    add_common_arguments(simulate_parser, table=False)
    return simulate_parser


# function to setup the complete CLI
def start_cli_parser(args: list) -> int:
    # parent parser
    parser = argparse.ArgumentParser(
        prog="barrierdual",
        description="barrierdual: optimal dividends under a survival constraint",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    subparsers = parser.add_subparsers(dest="command")

    # setup all subparsers
    setup_solve_parser(subparsers)
    setup_barrier_map_parser(subparsers)
    setup_psi_curve_parser(subparsers)
    setup_dual_curve_parser(subparsers)
    setup_value_curve_parser(subparsers)
    setup_regions_parser(subparsers)
    setup_simulate_parser(subparsers)

    parsed, unknown = parser.parse_known_args(args)

    if len(unknown) > 0:
        BdUtils.print_error(f"[ERR]: Unknown arguments: {unknown}")
        return 2

    if parsed.command is None:
        BdUtils.print_error("[ERR]: No command provided")
        return 2

    # route the command
    return CMD_ROUTER.route_commands(parsed.command, parsed)
