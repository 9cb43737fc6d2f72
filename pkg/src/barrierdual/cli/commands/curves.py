import barrierdual.cli.utils as CliUtils
import barrierdual.utils as BdUtils
from barrierdual import defaults
from barrierdual.cli.commands.solve import require_instance
from barrierdual.dual import eval_dual_value, solve_dual
from barrierdual.errors import InvalidConfig
from barrierdual.primal import classify_and_solve, dual_curve
from barrierdual.ruin import psi, psi_hat


def psi_curve_entrypoint(args, context) -> int:
    params = CliUtils.build_params(args)
    barriers = CliUtils.parse_nonnegative_grid("b-list", CliUtils.pick(args.b_list, defaults.B_LIST))
    xs = CliUtils.parse_nonnegative_grid("x-grid", CliUtils.pick(args.x_grid, defaults.X_GRID))

    columns = ["x"] + [f"psi_b{b:g}" for b in barriers] + ["psi_hat"]
    rows = [[x] + [psi(params, b, x) for b in barriers] + [psi_hat(params, x)] for x in xs]

    CliUtils.emit_table(args, columns, rows, "Discounted ruin-time functional psi_b(x)")
    BdUtils.print_success(f"[DONE]: {len(rows)} rows, {len(barriers)} barriers")
    return 0


def dual_curve_entrypoint(args, context) -> int:
    params = CliUtils.build_params(args)
    x0, T = require_instance(args)
    grid = CliUtils.parse_nonnegative_grid("lambda-grid", CliUtils.pick(args.lambda_grid, defaults.DUAL_LAMBDA_GRID))

    rows = [
        [lm, value, solve_dual(params, lm, T).barrier]
        for lm, value in dual_curve(params, x0, T, grid)
    ]

    CliUtils.emit_table(
        args, ["lambda", "dual_value", "barrier"], rows, f"Dual value at x0={x0:g}, T={T:g}", plotted=[2]
    )
    BdUtils.print_success(f"[DONE]: {len(rows)} rows")
    return 0


def value_curve_entrypoint(args, context) -> int:
    params = CliUtils.build_params(args)
    if args.T is None:
        raise InvalidConfig("'value-curve' needs --T (or the same key in --config)")
    T = CliUtils.require_between("T", args.T, min_val=0.0)
    xs = CliUtils.parse_nonnegative_grid("x-grid", CliUtils.pick(args.x_grid, defaults.X_GRID))

    unconstrained = solve_dual(params, 0.0, T)
    rows = []
    for x in xs:
        outcome = classify_and_solve(params, x, T)
        rows.append(
            [x, eval_dual_value(unconstrained, x), outcome.value.serialize(), outcome.case_tag.value]
        )

    CliUtils.emit_table(
        args,
        ["x", "unconstrained", "constrained", "case_tag"],
        rows,
        f"Value functions, T={T:g}",
        plotted=[2, 3],
    )
    BdUtils.print_success(f"[DONE]: {len(rows)} rows")
    return 0
