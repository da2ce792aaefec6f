"""Modal regression multifunctions written by `openfile`"""
import pathlib

import numpy as np
import yaml

from ..density import Bandwidths, normalize_geometry
from ..meanshift import ModalMultifunction
from .util import SampleFormatError


def _build(header, rows, path):
    try:
        geometry = normalize_geometry(header["geometry"])
    except KeyError:
        raise SampleFormatError("{}: missing header field `geometry`".format(
            path), lineno=1)
    except ValueError as exc:
        raise SampleFormatError("{}: {}".format(path, exc), lineno=1)
    mesh = []
    branches = []
    densities = []
    iterations = []
    for delta, mode, dens, its in rows:
        if not mesh or mesh[-1] != delta:
            mesh.append(delta)
            branches.append([])
            densities.append([])
            iterations.append([])
        if np.isfinite(mode):
            branches[-1].append(mode)
            densities[-1].append(dens)
            iterations[-1].append(int(its))
    if "mesh_size" in header and int(header["mesh_size"]) != len(mesh):
        raise SampleFormatError("{}: header announces {} mesh points, found "
                                "{}".format(path, header["mesh_size"],
                                            len(mesh)), lineno=1)
    bandwidths = None
    if "predictor_smoothing" in header and "response_smoothing" in header:
        bandwidths = Bandwidths(header["predictor_smoothing"],
                                header["response_smoothing"])
    n = int(header["n"]) if header.get("n") not in (None, "") else None
    return ModalMultifunction(geometry, mesh, branches, densities=densities,
                              iterations=iterations, bandwidths=bandwidths,
                              n=n)


def _open_yaml(path):
    with path.open("r", encoding="utf-8") as fd:
        data = yaml.safe_load(fd)
    if not isinstance(data, dict) or "records" not in data:
        raise SampleFormatError("{}: expected a mapping with `records`"
                                .format(path), lineno=1)
    rows = [(float(r["mesh_value"]), float(r["mode_value"]),
             float(r["density_value"]), int(r["iterations"]))
            for r in data["records"]]
    return _build(data, rows, path)


def open_multifunction(path):
    """Read a multifunction table (or its YAML variant)

    The table layout is a block of "# key: value" header lines
    followed by tab-separated records

        mesh_value  mode_value  density_value  iterations

    one per (mesh point, branch). Mesh points without branches have
    a single record with mode_value "nan".
    """
    path = pathlib.Path(path)
    if path.suffix.lower() in (".yaml", ".yml"):
        return _open_yaml(path)
    header = {}
    rows = []
    with path.open("r", encoding="utf-8") as fd:
        for lineno, line in enumerate(fd, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line.lstrip("#").partition(":")
                if sep and " " not in key.strip():
                    header[key.strip()] = value.strip()
                continue
            fields = line.split()
            if len(fields) != 4:
                raise SampleFormatError("Line {} of {}: expected 4 columns, "
                                        "got {}".format(lineno, path,
                                                        len(fields)),
                                        lineno=lineno)
            try:
                rows.append((float(fields[0]), float(fields[1]),
                             float(fields[2]), int(fields[3])))
            except ValueError:
                raise SampleFormatError("Line {} of {}: malformed numeric "
                                        "field in {!r}".format(lineno, path,
                                                               line),
                                        lineno=lineno)
    if not rows:
        raise SampleFormatError("{}: no records".format(path), lineno=1)
    return _build(header, rows, path)
