# Helpers for converting lsemStability objects to and from JSON.
import json
import math
import numpy as np
from lsemStability.errors import InputFileError


def matrix_to_list(m):
    if m is None:
        return None
    return [[float(v) for v in row] for row in np.asarray(m, dtype=np.float64)]


def list_to_matrix(rows, name="matrix"):
    if rows is None:
        return None
    m = np.array(rows, dtype=np.float64)
    if m.ndim != 2:
        raise InputFileError("%s must be a list of rows" % name)
    return m


def finite_or_none(x):
    x = float(x)
    return x if math.isfinite(x) else None


def save_json(data, path):
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def load_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputFileError("File %s not found" % path, path=path)
    except json.JSONDecodeError as e:
        raise InputFileError("File %s is not valid JSON: %s" % (path, e), path=path)
