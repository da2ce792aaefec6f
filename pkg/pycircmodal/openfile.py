"""Export samples, multifunctions, score tables and evaluations

Tables are tab-separated text with "#" comment headers; numbers are
written with 17 significant digits so that reading a file back gives
the exact same values. The structured-text variant is YAML.
"""
import csv
import pathlib

import numpy as np
import yaml

from ._version import version

#: Supported output formats
FORMATS = ("table", "yaml")

ReadmeTable = """# This file was created using pycircmodal version {}.
# Angles are given in radians.
""".format(version)


def _num(value):
    return "{:.17g}".format(value)


def _check_format(fmt):
    if fmt not in FORMATS:
        raise ValueError("Unknown output format '{}', expected one of {}"
                         .format(fmt, FORMATS))


def _write_yaml(path, data):
    with pathlib.Path(path).open("w", encoding="utf-8") as fd:
        yaml.safe_dump(data, fd, default_flow_style=False, sort_keys=False)


def _open_table(path):
    fd = pathlib.Path(path).open("w", encoding="utf-8", newline="")
    writer = csv.writer(fd, delimiter="\t", lineterminator="\n")
    return fd, writer


def save_sample(path, sample):
    """Write a sample in the input format of `readfiles.open_sample`"""
    fd, writer = _open_table(path)
    with fd:
        fd.write("# geometry={} n={}\n".format(sample.geometry, sample.n))
        fd.write(ReadmeTable)
        fd.write("# predictor\tresponse\n")
        for x, y in zip(sample.predictors, sample.responses):
            writer.writerow([_num(x), _num(y)])


def multifunction_header(mf):
    """Header fields echoing geometry, n, bandwidths and mesh size"""
    header = {"geometry": mf.geometry,
              "n": "" if mf.n is None else int(mf.n)}
    if mf.bandwidths is not None:
        header["predictor_smoothing"] = float(mf.bandwidths.predictor_smoothing)
        header["response_smoothing"] = float(mf.bandwidths.response_smoothing)
    header["mesh_size"] = len(mf)
    return header


def save_multifunction(path, mf, fmt="table"):
    """Write one record per (mesh point, branch)

    Records have the fields mesh_value, mode_value, density_value and
    iterations. A mesh point without branches is written as a single
    record with NaN mode and density so that the mesh is preserved.
    """
    _check_format(fmt)
    header = multifunction_header(mf)
    records = []
    for ii, delta in enumerate(mf.mesh):
        if mf.branches[ii].size == 0:
            records.append((float(delta), np.nan, np.nan, 0))
        for mode, dens, its in zip(mf.branches[ii], mf.densities[ii],
                                   mf.iterations[ii]):
            records.append((float(delta), float(mode), float(dens),
                            int(its)))
    if fmt == "yaml":
        data = dict(header)
        data["records"] = [{"mesh_value": r[0], "mode_value": r[1],
                            "density_value": r[2], "iterations": r[3]}
                           for r in records]
        _write_yaml(path, data)
        return
    fd, writer = _open_table(path)
    with fd:
        fd.write(ReadmeTable)
        for key, value in header.items():
            fd.write("# {}: {}\n".format(key, value))
        fd.write("# mesh_value\tmode_value\tdensity_value\titerations\n")
        for r in records:
            writer.writerow([_num(r[0]), _num(r[1]), _num(r[2]), r[3]])


def save_score_table(path, table, selected, fmt="table"):
    """Write every grid cell score and the selected smoothing pair"""
    _check_format(fmt)
    rows = table.rows()
    if fmt == "yaml":
        _write_yaml(path, {
            "method": table.method,
            "selected": {"predictor_smoothing":
                         float(selected.predictor_smoothing),
                         "response_smoothing":
                         float(selected.response_smoothing)},
            "scores": [{"predictor_smoothing": float(p),
                        "response_smoothing": float(r),
                        "score": float(s)} for p, r, s in rows]})
        return
    fd, writer = _open_table(path)
    with fd:
        fd.write(ReadmeTable)
        fd.write("# method: {}\n".format(table.method))
        fd.write("# selected_predictor_smoothing: {}\n".format(
            _num(selected.predictor_smoothing)))
        fd.write("# selected_response_smoothing: {}\n".format(
            _num(selected.response_smoothing)))
        fd.write("# predictor_smoothing\tresponse_smoothing\tscore\n")
        for p, r, s in rows:
            writer.writerow([_num(p), _num(r), _num(s)])


def save_evaluation(path, mesh, result, fmt="table"):
    """Write pointwise errors and the empirical global error

    Parameters
    ----------
    path : str or pathlib.Path
        Output file.
    mesh : 1d array
        Mesh of the compared multifunctions.
    result : metrics.GlobalError
        Output of `metrics.empirical_global_error`.
    fmt : str
        "table" or "yaml".
    """
    _check_format(fmt)
    if fmt == "yaml":
        _write_yaml(path, {
            "global_error": float(result.value),
            "n_undefined": int(result.n_undefined),
            "pointwise": [{"mesh_value": float(d),
                           "error": None if np.isnan(e) else float(e)}
                          for d, e in zip(mesh, result.pointwise)]})
        return
    fd, writer = _open_table(path)
    with fd:
        fd.write(ReadmeTable)
        fd.write("# global_error: {}\n".format(_num(result.value)))
        fd.write("# n_undefined: {}\n".format(result.n_undefined))
        fd.write("# mesh_value\tpointwise_error\n")
        for d, e in zip(mesh, result.pointwise):
            writer.writerow([_num(d), _num(e)])


def save_model(path, model):
    """Write a simulation model as YAML (see `readfiles.open_model`)"""
    _write_yaml(path, model.to_dict())
