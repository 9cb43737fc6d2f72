import barrierdual.cli.utils as CliUtils
import barrierdual.utils as BdUtils
from barrierdual import defaults
from barrierdual.errors import InvalidGrid
from barrierdual.model import Constraint, discounted_horizon
from barrierdual.primal import region_scan, unconstrained_barrier
from barrierdual.ruin import psi, psi_hat


def k_grid_from_args(args, params):
    if args.k_grid is not None:
        ks = CliUtils.parse_nonnegative_grid("k-grid", args.k_grid)
    else:
        ts = CliUtils.parse_nonnegative_grid("t-grid", CliUtils.pick(args.t_grid, defaults.T_GRID))
        ks = [discounted_horizon(params.delta, t) for t in ts]

    if ks[-1] >= params.inv_delta:
        raise InvalidGrid(f"K_T={ks[-1]} is not below 1/delta={params.inv_delta}")
    return ks


def regions_entrypoint(args, context) -> int:
    params = CliUtils.build_params(args)
    xs = CliUtils.parse_nonnegative_grid("x-grid", CliUtils.pick(args.x_grid, defaults.X_GRID))
    ks = k_grid_from_args(args, params)

    BdUtils.print_info(f"[INFO]: Classifying {len(xs)} x {len(ks)} cells...")
    b_free = unconstrained_barrier(params)
    boundary = {x: (psi(params, b_free, x), psi_hat(params, x)) for x in xs}

    rows = []
    for x0, kT, tag in region_scan(params, xs, ks):
        psi_free, limit = boundary[x0]
        T = Constraint.from_discounted(params.delta, kT).T
        rows.append([x0, kT, T, tag.value, psi_free, limit, params.inv_delta])

    CliUtils.emit_table(
        args,
        ["x0", "K_T", "T", "case_tag", "psi_free", "psi_hat", "inv_delta"],
        rows,
        "Case regions in the (x0, K_T) plane",
        plotted=[5, 6, 7],
    )
    BdUtils.print_success(f"[DONE]: {len(rows)} cells")
    return 0
