import barrierdual.cli.utils as CliUtils
import barrierdual.utils as BdUtils
from barrierdual import defaults
from barrierdual.dual import solve_dual


def barrier_map_entrypoint(args, context) -> int:
    params = CliUtils.build_params(args)
    grid = CliUtils.parse_nonnegative_grid("lambda-grid", CliUtils.pick(args.lambda_grid, defaults.LAMBDA_GRID))

    BdUtils.print_info(
        f"[INFO]: Barrier map on {len(grid)} multipliers (lambda_bar={params.lambda_bar:.6g})"
    )
    rows = []
    for lm in grid:
        sol = solve_dual(params, lm)
        rows.append([lm, sol.barrier, sol.regime.value])

    CliUtils.emit_table(args, ["lambda", "barrier", "regime"], rows, "Optimal barrier b_Lambda", plotted=[2])
    BdUtils.print_success(f"[DONE]: {len(rows)} rows")
    return 0
