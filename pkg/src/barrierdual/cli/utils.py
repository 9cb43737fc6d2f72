import csv
import json
import math
import os
import sys

import numpy as np
import validators
import yaml

import barrierdual.utils as BdUtils
from barrierdual import defaults
from barrierdual.errors import InvalidConfig, InvalidGrid
from barrierdual.model import ModelParams, params_from_mapping

# config keys that do not follow the flag -> dest rule
CONFIG_DESTS = {"lambda": "lam"}


def config_dest(key: str) -> str:
    return CONFIG_DESTS.get(key, key.replace("-", "_"))


def load_config(path):
    if not os.path.exists(path):
        raise InvalidConfig(f"Config file [{path}] does not exist.")

    with open(path, "r") as f:
        try:
            content = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise InvalidConfig(f"Error parsing config file [{path}]: {e}")

    if content is None:
        return {}
    if not isinstance(content, dict):
        raise InvalidConfig(f"Config file [{path}] must hold a mapping of flag names to values.")
    return content


def apply_config(args):
    """Fill every flag left unset on the command line from --config."""
    if getattr(args, "config", None) is None:
        return args

    BdUtils.print_info(f"[INFO]: Reading {args.config}...")
    for key, value in load_config(args.config).items():
        dest = config_dest(str(key))
        if not hasattr(args, dest):
            BdUtils.print_warning(f"[WARN]: Config key [{key}] does not apply to '{args.command}', ignored.")
            continue
        if getattr(args, dest) is None:
            setattr(args, dest, value)
    return args


def build_params(args) -> ModelParams:
    values = {
        "lambda": args.lam if args.lam is not None else defaults.BASE_PARAMS["lambda"],
        "c": args.c if args.c is not None else defaults.BASE_PARAMS["c"],
        "alpha": args.alpha if args.alpha is not None else defaults.BASE_PARAMS["alpha"],
        "delta": args.delta if args.delta is not None else defaults.BASE_PARAMS["delta"],
    }
    return params_from_mapping(values)


def require_between(name, value, min_val=None, max_val=None) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidConfig(f"[{name}] must be a number, got {value!r}")
    if not math.isfinite(value) or not validators.between(value, min_val=min_val, max_val=max_val):
        raise InvalidConfig(f"[{name}]={value} must lie in [{min_val}, {max_val}]")
    return value


def require_count(name, value, min_val=1) -> int:
    try:
        count = int(value)
    except (TypeError, ValueError):
        raise InvalidConfig(f"[{name}] must be an integer, got {value!r}")
    if count != float(value) or not validators.between(count, min_val=min_val):
        raise InvalidConfig(f"[{name}]={value} must be an integer >= {min_val}")
    return count


def parse_grid(name, text) -> np.ndarray:
    """A grid is 'lo:hi:n' (n evenly spaced points), 'v1,v2,...', or a list from a config file."""
    if text is None:
        raise InvalidGrid(f"No values given for [{name}].")

    try:
        if isinstance(text, (list, tuple)):
            grid = np.asarray([float(v) for v in text])
        elif ":" in str(text):
            lo, hi, n = str(text).split(":")
            grid = np.linspace(float(lo), float(hi), int(n))
        else:
            grid = np.asarray([float(v) for v in str(text).split(",") if v.strip() != ""])
    except ValueError as e:
        raise InvalidGrid(f"Malformed grid [{name}]={text!r}: {e}")

    if grid.size == 0:
        raise InvalidGrid(f"Grid [{name}] is empty.")
    if not np.all(np.isfinite(grid)):
        raise InvalidGrid(f"Grid [{name}] holds non-finite values.")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise InvalidGrid(f"Grid [{name}] must be strictly increasing.")
    return grid


def format_number(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, defaults.NUMBER_FORMAT)


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        if math.isfinite(obj):
            return float(format(float(obj), defaults.NUMBER_FORMAT))
        return format_number(obj)
    return obj


def _open_output(out):
    if out is None:
        return sys.stdout, False
    return open(out, "w", newline=""), True


def write_json(obj, out=None):
    stream, close = _open_output(out)
    try:
        json.dump(_json_safe(obj), stream, indent=2)
        stream.write("\n")
    finally:
        if close:
            stream.close()


def write_table(columns, rows, fmt="csv", out=None):
    if fmt == "json":
        write_json([dict(zip(columns, row)) for row in rows], out)
        return

    stream, close = _open_output(out)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(v) for v in row])
    finally:
        if close:
            stream.close()


def write_gnuplot(script_path, data_path, columns, title, plotted=None):
    """A gnuplot script plotting the numeric columns of the CSV (1-based) against the first one."""
    if data_path is None:
        raise InvalidConfig("--gnuplot needs --out so the script can reference the data file.")

    lines = [
        f"# {title}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set xlabel '{columns[0]}'",
        "set grid",
    ]
    if plotted is None:
        plotted = range(2, len(columns) + 1)
    series = [f"'{data_path}' using 1:{i} with lines" for i in plotted]
    lines.append("plot " + ", \\\n     ".join(series))

    with open(script_path, "w") as f:
        f.write("\n".join(lines) + "\n")
    BdUtils.print_info(f"[INFO]: Wrote gnuplot script {script_path}")


def emit_table(args, columns, rows, title, plotted=None):
    fmt = args.format or "csv"
    if fmt not in ("csv", "json"):
        raise InvalidConfig(f"Unknown format [{fmt}]: use csv or json.")
    write_table(columns, rows, fmt, args.out)
    if getattr(args, "gnuplot", None):
        write_gnuplot(args.gnuplot, args.out, columns, title, plotted)


def parse_nonnegative_grid(name, text) -> list:
    grid = parse_grid(name, text)
    if grid[0] < 0:
        raise InvalidGrid(f"Grid [{name}] must be nonnegative, got {grid[0]}")
    return [float(v) for v in grid]


def pick(value, default):
    return default if value is None else value
