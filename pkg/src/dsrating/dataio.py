"""Rating-data ingestion, bundled datasets and result serialization."""
import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, IoError, MalformedCsv, UnknownDataset
from .recode import RatingMatrix

TOY_RATINGS = [
    [2, 4, 5],
    [3, 3, 1],
    [2, 1, 4],
    [1, 5, 3],
]

CRIME_LABELS = ("Arson", "Burglary", "Counterfeiting", "Forgery", "Homicide",
                "Kidnapping", "Mugging", "Receiving stolen goods")

# seriousness of crimes, 17 respondents, 1 = somewhat serious .. 4 = extremely serious
CRIME_RATINGS = [
    [4, 2, 2, 2, 4, 3, 3, 1],
    [4, 2, 2, 2, 4, 4, 3, 1],
    [3, 2, 2, 2, 4, 3, 3, 1],
    [4, 3, 2, 2, 4, 4, 4, 3],
    [4, 3, 2, 2, 4, 4, 3, 2],
    [4, 3, 3, 2, 4, 4, 3, 2],
    [4, 1, 2, 2, 4, 4, 2, 1],
    [4, 4, 2, 2, 4, 4, 3, 2],
    [3, 2, 1, 2, 4, 4, 3, 1],
    [4, 3, 3, 3, 4, 4, 3, 2],
    [4, 2, 3, 3, 4, 4, 4, 1],
    [4, 4, 3, 3, 4, 4, 4, 2],
    [4, 3, 3, 2, 4, 4, 3, 1],
    [4, 2, 2, 2, 4, 3, 3, 1],
    [4, 2, 1, 1, 4, 4, 2, 1],
    [3, 2, 2, 2, 4, 3, 3, 1],
    [3, 2, 2, 2, 4, 4, 3, 2],
]

BUILTIN_NAMES = ("toy", "crimes", "crimes_no_homicide")

# sha256 of format_ratings_csv(builtin(name)); guards the transcribed tables
BUILTIN_SHA256 = {
    "toy": "10dd13a035e6a1977c7ae9722e9cf9b5d610114d5d07fde3a927941f155bd91a",
    "crimes": "93793fe97e825335f9f6d4240592d9325540b7757645352e68b721784c7f76dd",
    "crimes_no_homicide": "1e256eb497a41459084cd2cba3634ebb3f15a44a93637006e228dbb36dd803ca",
}


@dataclass(frozen=True)
class DatasetDescriptor:
    name: str
    source: str = "builtin"          # "builtin" or "file"
    scale_max: int = None
    has_header: bool = True
    id_column: object = None

    def __post_init__(self):
        if self.source not in ("builtin", "file"):
            raise InvalidInput(f"unknown dataset source {self.source!r}")
        if self.source == "builtin" and self.name not in BUILTIN_NAMES:
            raise UnknownDataset(f"unknown builtin dataset {self.name!r}; "
                                 f"choose from {', '.join(BUILTIN_NAMES)}")
        if self.scale_max is not None and self.scale_max < 2:
            raise InvalidInput("scale_max must be at least 2")

    def load(self) -> RatingMatrix:
        if self.source == "builtin":
            r = builtin(self.name)
            if self.scale_max is not None and self.scale_max != r.q:
                raise InvalidInput(f"builtin {self.name!r} uses q={r.q}, not {self.scale_max}")
            return r
        if self.scale_max is None:
            raise InvalidInput("a scale maximum is required for CSV input")
        return load_csv(self.name, self.scale_max, self.has_header, self.id_column)


def builtin(name) -> RatingMatrix:
    if name == "toy":
        return RatingMatrix(np.array(TOY_RATINGS), 5)
    if name in ("crimes", "crimes_no_homicide"):
        rows = tuple(str(i + 1) for i in range(len(CRIME_RATINGS)))
        r = RatingMatrix(np.array(CRIME_RATINGS), 4, rows, CRIME_LABELS)
        return r.drop_columns(["Homicide"]) if name == "crimes_no_homicide" else r
    raise UnknownDataset(f"unknown builtin dataset {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def parse_data_spec(spec, scale_max=None, has_header=True, id_column=None) -> DatasetDescriptor:
    """``builtin:<name>`` or a file path."""
    if spec.startswith("builtin:"):
        return DatasetDescriptor(spec[len("builtin:"):], "builtin", scale_max)
    return DatasetDescriptor(spec, "file", scale_max, has_header, id_column)


def _parse_int(cell, line):
    text = cell.strip()
    try:
        return int(text)
    except ValueError:
        try:
            value = float(text)
        except ValueError:
            raise MalformedCsv(line, f"non-numeric cell {cell!r}") from None
        if not math.isfinite(value) or value != int(value):
            raise MalformedCsv(line, f"non-integer cell {cell!r}")
        return int(value)


def read_csv_text(text, q, has_header=True, id_column=None) -> RatingMatrix:
    rows = [(i + 1, row) for i, row in enumerate(csv.reader(io.StringIO(text)))
            if row and any(c.strip() for c in row)]
    if not rows:
        raise MalformedCsv(1, "empty file")
    header = None
    if has_header:
        line, header = rows[0]
        header = [h.strip() for h in header]
        rows = rows[1:]
    width = len(header) if header is not None else len(rows[0][1]) if rows else 0
    id_idx = None
    if id_column is not None:
        if isinstance(id_column, int):
            id_idx = id_column
        elif header is not None and id_column in header:
            id_idx = header.index(id_column)
        else:
            raise InvalidInput(f"id column {id_column!r} not found")
        if not 0 <= id_idx < width:
            raise InvalidInput(f"id column index {id_idx} out of range")
    ratings, ids = [], []
    for line, row in rows:
        if len(row) != width:
            raise MalformedCsv(line, f"expected {width} cells, found {len(row)}")
        values = []
        for j, cell in enumerate(row):
            if j == id_idx:
                ids.append(cell.strip())
            else:
                values.append(_parse_int(cell, line))
        ratings.append(values)
    if not ratings:
        raise MalformedCsv(len(rows) + 1, "no data rows")
    cols = None
    if header is not None:
        cols = tuple(h for j, h in enumerate(header) if j != id_idx)
    return RatingMatrix(np.array(ratings, dtype=np.int64), q, tuple(ids) if ids else None, cols)


def load_csv(path, q, has_header=True, id_column=None) -> RatingMatrix:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return read_csv_text(text, q, has_header, id_column)


def format_ratings_csv(r: RatingMatrix, id_name="id") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([id_name, *r.col_labels])
    for label, row in zip(r.row_labels, r.ratings):
        w.writerow([label, *(int(x) for x in row)])
    return buf.getvalue()


def builtin_checksum(name):
    return hashlib.sha256(format_ratings_csv(builtin(name)).encode()).hexdigest()


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def fmt_real(x):
    """17 significant digits: round-trips every float64."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # no "-0"
    return format(x, ".17g")


def fmt_exact(x):
    """Shortest form for the integer/half-integer values of recoded tables."""
    x = float(x)
    if x == int(x):
        return str(int(x))
    return repr(x)


def format_recoded_csv(m) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", *m.col_labels])
    for label, row in zip(m.row_labels, m.data):
        w.writerow([label, *(fmt_exact(x) for x in row)])
    return buf.getvalue()


def _records(labels, coords):
    return [{"label": lab, "dims": list(row)} for lab, row in zip(labels, coords)]


def result_document(res) -> dict:
    sol = res.solution
    return {
        "variant": res.variant.value,
        "k": sol.k,
        "q": res.data.q,
        "dropped": list(res.dropped),
        "singular_values": list(sol.singular_values),
        "explained": list(sol.explained),
        "cumulative": list(sol.cumulative_explained),
        "coordinates": {
            "rows_standard": _records(sol.row_labels, sol.row_standard),
            "rows_principal": _records(sol.row_labels, sol.row_principal),
            "cols_standard": _records(sol.col_labels, sol.col_standard),
            "cols_principal": _records(sol.col_labels, sol.col_principal),
        },
        "mirrored_rows": list(res.mirrored_rows),
        "recodings": [m.kind.value for key, m in res.recodings.items() if key != "analyzed"],
    }


def _dump(obj, indent, level=0):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.floating, np.integer)) for v in obj):
            return "[" + ", ".join(_dump(v, indent) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _dump(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_real(obj)
    return json.dumps(obj, ensure_ascii=False)


def serialize_result(res, fmt="json") -> bytes:
    doc = result_document(res)
    if fmt == "json":
        return (_dump(doc, 2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["set", "label"] + [f"dim{d + 1}" for d in range(doc["k"])])
        for name, records in doc["coordinates"].items():
            for rec in records:
                w.writerow([name, rec["label"], *(fmt_real(x) for x in rec["dims"])])
        return buf.getvalue().encode("utf-8")
    raise InvalidInput(f"unknown output format {fmt!r}")


def parse_csv_result(payload: bytes) -> dict:
    """Inverse of ``serialize_result(..., 'csv')``: set -> {label: dims}."""
    out = {}
    reader = csv.reader(io.StringIO(payload.decode("utf-8")))
    next(reader)
    for row in reader:
        out.setdefault(row[0], {})[row[1]] = [float(x) for x in row[2:]]
    return out
