"""CSV/JSON writers and readers used by the command line.

CSV files are UTF-8 with LF endings and a header row; floats carry 17
significant digits so ``read_csv_array`` recovers them bit-for-bit.
"""
import csv
import json
from pathlib import Path

import numpy as np


def format_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    if value is None:
        return ""
    return str(value)


def write_csv(path, header, rows):
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
    return path


def write_json(path, obj):
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, allow_nan=False)
        fh.write("\n")
    return path


def read_csv(path):
    """Return ``(header, rows)`` with every cell as a string."""
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]


def read_csv_array(path):
    """Return ``(header, array)`` for an all-numeric CSV."""
    header, rows = read_csv(path)
    return header, np.array([[float(x) for x in row] for row in rows], dtype=float).reshape(-1, len(header))
