# Route all commands to their respective functions
import barrierdual.cli.commands.solve as cmd_solve
import barrierdual.cli.commands.barrier_map as cmd_barrier_map
import barrierdual.cli.commands.curves as cmd_curves
import barrierdual.cli.commands.regions as cmd_regions
import barrierdual.cli.commands.simulate as cmd_simulate
import barrierdual.cli.utils as CliUtils
import barrierdual.utils as BdUtils
from barrierdual.errors import BarrierDualError

ROUTER = {
    "solve": cmd_solve.solve_entrypoint,
    "barrier-map": cmd_barrier_map.barrier_map_entrypoint,
    "psi-curve": cmd_curves.psi_curve_entrypoint,
    "dual-curve": cmd_curves.dual_curve_entrypoint,
    "value-curve": cmd_curves.value_curve_entrypoint,
    "regions": cmd_regions.regions_entrypoint,
    "simulate": cmd_simulate.simulate_entrypoint,
}


def route_commands(command, args) -> int:
    try:
        CliUtils.apply_config(args)
        return ROUTER[command](args, {})
    except BarrierDualError as e:
        BdUtils.print_error(f"[ERR]: {e}")
        return 2
    except KeyError as e:
        BdUtils.print_error(f"[ERR]: Unknown command or key {e}")
        return 2
    except (ValueError, OSError) as e:
        BdUtils.print_error(f"[ERR]: {e}")
        return 2
