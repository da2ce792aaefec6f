"""Command line interface

    pycircmodal fit       --input data.csv --kappa 30 --h 0.6 --output mf.csv
    pycircmodal select    --input data.csv --method cv --output scores.csv
    pycircmodal simulate  --model 1002 --n 200 --output data.csv
    pycircmodal evaluate  --input mf.csv --oracle oracle.csv

Exit status is 0 on success, 2 on usage errors and 1 on runtime
errors.
"""
import argparse
import logging
import pathlib
import sys
import warnings

import numpy as np
import yaml

from . import openfile
from ._version import version
from .bandwidth import (BandwidthGrid, bootstrap_ise, default_grid,
                        fit_mixture_pilot, select_by_cv)
from .density import GEOMETRIES, Bandwidths, normalize_geometry
from .meanshift import (DEFAULT_MESH_SIZE, MeanShiftConfig, default_mesh,
                        fit_multifunction)
from .metrics import empirical_global_error
from .readfiles import open_model, open_multifunction, open_sample
from .simulate import draw, get_model, oracle_multifunction

logger = logging.getLogger(__name__)

#: Flag names of the smoothing values per geometry (predictor, response)
SMOOTHING_FLAGS = {"circ_lin": ("kappa", "h"),
                   "lin_circ": ("h", "kappa"),
                   "circ_circ": ("nu", "kappa")}

#: Defaults of options that may also come from a --config file
DEFAULTS = {"format": "table",
            "mesh": str(DEFAULT_MESH_SIZE),
            "seed": 0,
            "workers": 1,
            "init": "local",
            "init_neighbors": 10,
            "max_iter": 500,
            "tol_step": 1e-8,
            "merge_tol": None,
            "method": "cv",
            "boot_B": 100,
            "max_components": 3,
            "n": 200,
            }


class UsageError(Exception):
    """Invalid or inconsistent command line options"""
    pass


def _float_list(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma-separated numbers, got {!r}".format(text))


def _geometry(text):
    try:
        return normalize_geometry(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=pathlib.Path,
                        help="YAML file with option values (flags win)")
    common.add_argument("--geometry", type=_geometry,
                        help="one of {} (dashes allowed)".format(
                            ", ".join(g.replace("_", "-")
                                      for g in GEOMETRIES)))
    common.add_argument("--input", type=pathlib.Path, help="input file")
    common.add_argument("--output", type=pathlib.Path, help="output file")
    common.add_argument("--format", choices=openfile.FORMATS,
                        help="output format (default: table)")
    common.add_argument("--mesh",
                        help="number of mesh points or comma-separated "
                             "predictor values (default: 128)")
    common.add_argument("--seed", type=int, help="random seed (default: 0)")
    common.add_argument("--workers", type=int,
                        help="number of worker threads (default: 1)")
    common.add_argument("--init", choices=("local", "all"),
                        help="mean shift starting points (default: local)")
    common.add_argument("--init-neighbors", type=int,
                        help="nearest sample points used as starting "
                             "points (default: 10)")
    common.add_argument("--max-iter", type=int,
                        help="maximum mean shift iterations (default: 500)")
    common.add_argument("--tol-step", type=float,
                        help="mean shift step tolerance (default: 1e-8)")
    common.add_argument("--merge-tol", type=float,
                        help="mode merging radius (default: from "
                             "bandwidth)")
    common.add_argument("--log-file", type=pathlib.Path,
                        help="also write the run log to this file")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true",
                           help="log debug messages")
    verbosity.add_argument("--quiet", "-q", action="store_true",
                           help="log warnings and errors only")

    parser = argparse.ArgumentParser(
        prog="pycircmodal",
        description="Nonparametric modal regression for circular data")
    parser.add_argument("--version", action="version",
                        version="%(prog)s {}".format(version))
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    pfit = sub.add_parser("fit", parents=[common],
                          help="estimate the modal regression multifunction")
    sel = sub.add_parser("select", parents=[common],
                         help="select the smoothing pair")
    pfit.add_argument("--kappa", type=float, help="von Mises concentration")
    pfit.add_argument("--h", type=float, help="linear bandwidth")
    pfit.add_argument("--nu", type=float,
                      help="predictor concentration (circ-circ)")

    sel.add_argument("--method", choices=("cv", "bootstrap"),
                     help="selection method (default: cv)")
    sel.add_argument("--grid-kappa", type=_float_list,
                     help="comma-separated concentrations")
    sel.add_argument("--grid-h", type=_float_list,
                     help="comma-separated linear bandwidths")
    sel.add_argument("--grid-nu", type=_float_list,
                     help="comma-separated predictor concentrations "
                          "(circ-circ)")
    sel.add_argument("--boot-B", type=int, dest="boot_B",
                     help="number of bootstrap resamples (default: 100)")
    sel.add_argument("--max-components", type=int,
                     help="largest pilot mixture size (default: 3)")

    sim = sub.add_parser("simulate", parents=[common],
                         help="draw a sample from a simulation model")
    sim.add_argument("--model",
                     help="built-in model id or YAML model file")
    sim.add_argument("--n", type=int, help="sample size (default: 200)")
    sim.add_argument("--oracle-output", type=pathlib.Path,
                     help="also write the true modes on the mesh")

    ev = sub.add_parser("evaluate", parents=[common],
                        help="compare a fitted multifunction to an oracle")
    ev.add_argument("--oracle", type=pathlib.Path,
                    help="multifunction file with the true modes")
    return parser


class RunConfig(object):
    """Options of one command, from flags and an optional YAML file"""

    def __init__(self, args):
        values = dict(DEFAULTS)
        if getattr(args, "config", None) is not None:
            values.update(self._load_config(args.config))
        for key, val in vars(args).items():
            if val is not None and val is not False:
                values[key] = val
            elif key not in values:
                values[key] = val
        self.command = args.command
        self._values = values
        try:
            self.meanshift = MeanShiftConfig(
                max_iter=values["max_iter"],
                tol_step=values["tol_step"],
                merge_tol=values["merge_tol"],
                init_neighbors=values["init_neighbors"],
                init=values["init"])
        except ValueError as exc:
            raise UsageError(str(exc))
        if values["format"] not in openfile.FORMATS:
            raise UsageError("--format must be one of {}".format(
                openfile.FORMATS))
        if int(values["workers"]) < 1:
            raise UsageError("--workers must be at least 1")
        if values.get("geometry") is not None:
            try:
                values["geometry"] = normalize_geometry(values["geometry"])
            except ValueError as exc:
                raise UsageError(str(exc))

    def __getattr__(self, name):
        try:
            return self.__dict__["_values"][name]
        except KeyError:
            raise AttributeError(name)

    @staticmethod
    def _load_config(path):
        try:
            with pathlib.Path(path).open("r", encoding="utf-8") as fd:
                data = yaml.safe_load(fd) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise UsageError("Cannot read config file {}: {}".format(path,
                                                                      exc))
        if not isinstance(data, dict):
            raise UsageError("Config file {} must hold a mapping".format(path))
        return {str(k).replace("-", "_"): v for k, v in data.items()}

    def require(self, *names):
        for name in names:
            if self._values.get(name) is None:
                raise UsageError("--{} is required for '{}'".format(
                    name.replace("_", "-"), self.command))

    def mesh_for(self, sample):
        spec = self._values["mesh"]
        if isinstance(spec, (list, tuple)):
            return np.array(spec, dtype=float)
        spec = str(spec)
        try:
            if "," in spec:
                return np.array(_float_list(spec), dtype=float)
            return default_mesh(sample, int(spec))
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError("Invalid --mesh {!r}: {}".format(spec, exc))

    def bandwidths_for(self, geometry):
        pflag, rflag = SMOOTHING_FLAGS[geometry]
        pval = self._values.get(pflag)
        rval = self._values.get(rflag)
        if pval is None or rval is None:
            raise UsageError("'{}' on {} data needs --{} and --{}".format(
                self.command, geometry.replace("_", "-"), pflag, rflag))
        try:
            return Bandwidths(pval, rval)
        except ValueError as exc:
            raise UsageError(str(exc))

    def grid_for(self, sample):
        pflag, rflag = SMOOTHING_FLAGS[sample.geometry]
        base = default_grid(sample)
        pvals = self._values.get("grid_" + pflag)
        rvals = self._values.get("grid_" + rflag)
        try:
            if isinstance(pvals, str):
                pvals = _float_list(pvals)
            if isinstance(rvals, str):
                rvals = _float_list(rvals)
            return BandwidthGrid(
                base.predictor_values if pvals is None else pvals,
                base.response_values if rvals is None else rvals)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(str(exc))


def _load_sample(cfg):
    cfg.require("input")
    sample = open_sample(cfg.input, geometry=cfg.geometry)
    logger.info("Loaded %s (%s, n=%d)", cfg.input, sample.geometry, sample.n)
    return sample


def cmd_fit(cfg):
    """Fit the multifunction and write one record per branch"""
    cfg.require("output")
    sample = _load_sample(cfg)
    bw = cfg.bandwidths_for(sample.geometry)
    mesh = cfg.mesh_for(sample)
    logger.info("Fitting with %s on %d mesh points (%r)", bw, mesh.size,
                cfg.meanshift)
    mf = fit_multifunction(sample, bw, mesh, cfg.meanshift,
                           workers=cfg.workers)
    openfile.save_multifunction(cfg.output, mf, fmt=cfg.format)
    logger.info("Wrote %d branch records to %s", len(mf.records()),
                cfg.output)
    return 0


def cmd_select(cfg):
    """Score the bandwidth grid and write the table with the selection"""
    cfg.require("output")
    sample = _load_sample(cfg)
    grid = cfg.grid_for(sample)
    logger.info("Selecting by %s on %r", cfg.method, grid)
    if cfg.method == "cv":
        best, table = select_by_cv(sample, grid, cfg.meanshift,
                                   workers=cfg.workers, return_table=True)
    elif cfg.method == "bootstrap":
        pilot = None
        if sample.geometry == "circ_lin":
            pilot = fit_mixture_pilot(sample,
                                      max_components=cfg.max_components,
                                      seed=cfg.seed)
            logger.info("Pilot: %r", pilot)
        best, table = bootstrap_ise(sample, grid, pilot, n_boot=cfg.boot_B,
                                    cfg=cfg.meanshift, seed=cfg.seed,
                                    workers=cfg.workers)
    else:
        raise UsageError("Unknown method '{}'".format(cfg.method))
    openfile.save_score_table(cfg.output, table, best, fmt=cfg.format)
    logger.info("Selected %s; wrote %d scores to %s", best, len(grid),
                cfg.output)
    return 0


def _load_model(spec):
    spec = str(spec)
    if spec.isdigit():
        return get_model(int(spec))
    return open_model(spec)


def cmd_simulate(cfg):
    """Draw a sample and optionally the true modes on the mesh"""
    cfg.require("model", "output")
    model = _load_model(cfg.model)
    if cfg.geometry is not None and cfg.geometry != model.geometry:
        raise UsageError("Model {} has geometry '{}', not '{}'".format(
            model, model.geometry, cfg.geometry))
    sample = draw(model, cfg.n, seed=cfg.seed)
    openfile.save_sample(cfg.output, sample)
    logger.info("Wrote %d observations of %r to %s", sample.n, model,
                cfg.output)
    if cfg.oracle_output is not None:
        mesh = cfg.mesh_for(sample)
        truth = oracle_multifunction(model, mesh)
        openfile.save_multifunction(cfg.oracle_output, truth, fmt=cfg.format)
        logger.info("Wrote oracle modes on %d mesh points to %s", mesh.size,
                    cfg.oracle_output)
    return 0


def cmd_evaluate(cfg):
    """Pointwise and global errors of a fitted file against an oracle"""
    cfg.require("input", "oracle")
    fitted = open_multifunction(cfg.input)
    truth = open_multifunction(cfg.oracle)
    result = empirical_global_error(truth, fitted)
    logger.info("Global error %.10g (%d undefined mesh points)",
                result.value, result.n_undefined)
    if cfg.output is not None:
        openfile.save_evaluation(cfg.output, fitted.mesh, result,
                                 fmt=cfg.format)
        logger.info("Wrote evaluation to %s", cfg.output)
    return 0


COMMANDS = {"fit": cmd_fit,
            "select": cmd_select,
            "simulate": cmd_simulate,
            "evaluate": cmd_evaluate}


def _setup_logging(args):
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    handlers = [logging.StreamHandler(sys.stderr)]
    if args.log_file is not None:
        handlers.append(logging.FileHandler(args.log_file, mode="w",
                                            encoding="utf-8"))
    fmt = logging.Formatter("%(asctime)s %(levelname)s %(name)s: "
                            "%(message)s")
    root = logging.getLogger()
    for hdl in handlers:
        hdl.setFormatter(fmt)
        hdl.setLevel(level)
        root.addHandler(hdl)
    previous = root.level
    root.setLevel(min(previous or logging.WARNING, level))
    logging.captureWarnings(True)
    return handlers, previous


def _teardown_logging(handlers, previous):
    logging.captureWarnings(False)
    root = logging.getLogger()
    root.setLevel(previous)
    for hdl in handlers:
        root.removeHandler(hdl)
        hdl.close()


def main(argv=None):
    """Run a subcommand and return the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers, previous = _setup_logging(args)
    try:
        with warnings.catch_warnings():
            # every library warning goes to the run log
            warnings.simplefilter("always")
            cfg = RunConfig(args)
            return COMMANDS[args.command](cfg)
    except UsageError as exc:
        logger.error("Usage error: %s", exc)
        return 2
    except (ValueError, RuntimeError, NotImplementedError, OSError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return 1
    finally:
        _teardown_logging(handlers, previous)


if __name__ == "__main__":
    sys.exit(main())
