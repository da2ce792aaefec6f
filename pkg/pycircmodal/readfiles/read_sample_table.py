"""Delimited-text regression samples"""
import pathlib
import re
import warnings

import numpy as np

from ..circular import wrap
from ..density import RegressionSample, normalize_geometry
from .util import SampleFormatError, WrappedAngleWarning

_HEADER = re.compile(r"^#\s*geometry\s*=\s*(?P<geometry>[\w-]+)"
                     r"\s+n\s*=\s*(?P<n>\S+)(?P<rest>.*)$")


def _split(line):
    return line.replace(",", " ").replace(";", " ").split()


def open_sample(path, geometry=None):
    """Read a regression sample from a file looking like this:

        # geometry=circ_lin n=4
        # predictor	response
        -2.9845130209	0.3515
        0.1200000000	-1.2000
        1.5707963268	2.0000
        3.1415926535	0.0000

    Columns are separated by tabs, blanks, commas or semicolons.
    Further lines starting with "#" are comments. Angles must be in
    radians; a header field `units=degrees` is rejected. Circular
    values outside (-π, π] are wrapped and reported with a
    `WrappedAngleWarning`.

    Parameters
    ----------
    path : str or pathlib.Path
        The file.
    geometry : str or None
        If given, the geometry declared in the header must match.

    Returns
    -------
    sample : RegressionSample
    """
    path = pathlib.Path(path)
    with path.open("r", encoding="utf-8") as fd:
        lines = fd.read().splitlines()
    if not lines:
        raise SampleFormatError("Empty file {}".format(path), lineno=1)
    match = _HEADER.match(lines[0].strip())
    if match is None:
        raise SampleFormatError("Line 1 of {}: expected header "
                                "'# geometry=<tag> n=<count>', got {!r}"
                                .format(path, lines[0]), lineno=1)
    try:
        tag = normalize_geometry(match.group("geometry"))
    except ValueError as exc:
        raise SampleFormatError("Line 1 of {}: {}".format(path, exc),
                                lineno=1)
    try:
        count = int(match.group("n"))
    except ValueError:
        raise SampleFormatError("Line 1 of {}: sample size {!r} is not an "
                                "integer".format(path, match.group("n")),
                                lineno=1)
    units = re.search(r"units\s*=\s*(\w+)", match.group("rest"))
    if units and units.group(1).lower() not in ("rad", "radian", "radians"):
        raise SampleFormatError("Line 1 of {}: angles must be given in "
                                "radians, got units={}".format(
                                    path, units.group(1)), lineno=1)
    if geometry is not None and normalize_geometry(geometry) != tag:
        raise SampleFormatError("Line 1 of {}: geometry mismatch, the file "
                                "holds '{}' data but '{}' was requested"
                                .format(path, tag,
                                        normalize_geometry(geometry)),
                                lineno=1)

    data = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = _split(line)
        if len(fields) != 2:
            raise SampleFormatError("Line {} of {}: expected 2 columns, got "
                                    "{}".format(lineno, path, len(fields)),
                                    lineno=lineno)
        try:
            row = [float(f) for f in fields]
        except ValueError:
            raise SampleFormatError("Line {} of {}: malformed numeric field "
                                    "in {!r}".format(lineno, path, line),
                                    lineno=lineno)
        if not np.all(np.isfinite(row)):
            raise SampleFormatError("Line {} of {}: values must be finite"
                                    .format(lineno, path), lineno=lineno)
        data.append(row)
    if len(data) != count:
        raise SampleFormatError("{}: header announces n={} but the file has "
                                "{} data rows".format(path, count, len(data)),
                                lineno=1)
    if count == 0:
        raise SampleFormatError("{}: no data rows".format(path), lineno=1)
    data = np.array(data, dtype=float)

    sample = RegressionSample(tag, data[:, 0], data[:, 1], name=path.name)
    for column, label, circ in ((0, "predictor", sample.predictor_is_circular),
                                (1, "response", sample.response_is_circular)):
        if circ:
            moved = np.sum(wrap(data[:, column]) != data[:, column])
            if moved:
                warnings.warn("{}: {} {} values outside (-π, π] were "
                              "wrapped.".format(path.name, moved, label),
                              WrappedAngleWarning)
    return sample
