from dataclasses import asdict

import barrierdual.cli.utils as CliUtils
import barrierdual.utils as BdUtils
from barrierdual import defaults
from barrierdual.errors import InvalidConfig
from barrierdual.primal import unconstrained_barrier
from barrierdual.sim import SimConfig, compare_with_closed_form, simulate, slack_from_estimate


def build_sim_config(args, params) -> SimConfig:
    if args.x0 is None:
        raise InvalidConfig("'simulate' needs --x0 (or the same key in --config)")
    x0 = CliUtils.require_between("x0", args.x0, min_val=0.0)

    if args.b is None:
        barrier = unconstrained_barrier(params)
        BdUtils.print_info(f"[INFO]: No --b given, using the unconstrained barrier {barrier:.6g}")
    else:
        barrier = CliUtils.require_between("b", args.b, min_val=0.0)

    return SimConfig.build(
        params,
        barrier=barrier,
        x0=x0,
        n_paths=CliUtils.require_count("n-paths", CliUtils.pick(args.n_paths, defaults.SIM_N_PATHS)),
        seed=CliUtils.require_count("seed", CliUtils.pick(args.seed, defaults.SIM_SEED), min_val=0),
        t_max=None if args.t_max is None else CliUtils.require_between("t-max", args.t_max, min_val=0.0),
    )


def simulate_entrypoint(args, context) -> int:
    params = CliUtils.build_params(args)
    config = build_sim_config(args, params)

    BdUtils.print_info(
        f"[INFO]: Simulating {config.n_paths} paths (b={config.barrier:.6g}, x0={config.x0:g}, seed={config.seed})..."
    )
    estimate = simulate(params, config)
    report = {"params": params.to_dict(), "config": asdict(config), "estimate": asdict(estimate)}

    if args.T is not None:
        T = CliUtils.require_between("T", args.T, min_val=0.0)
        report["slack"] = {"T": T, **asdict(slack_from_estimate(params, estimate, T))}

    status = 0
    if args.compare:
        comparison = compare_with_closed_form(params, config, estimate)
        report["comparison"] = {**asdict(comparison), "max_abs_z": comparison.max_abs_z}
        if comparison.max_abs_z > defaults.SIM_Z_FAIL:
            BdUtils.print_error(
                f"[ERR]: Simulation disagrees with the closed forms (|z|={comparison.max_abs_z:.3g})"
            )
            status = 3

    CliUtils.write_json(report, args.out)
    if status == 0:
        BdUtils.print_success(f"[DONE]: {estimate.n_ruined} of {estimate.n_paths} paths ruined before t_max")
    return status
