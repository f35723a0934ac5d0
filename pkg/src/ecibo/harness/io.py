"""On-disk formats: one CSV per (algorithm, run) and a JSON campaign summary.

CSV header: ``run,algorithm,eval,best_f,f,x1,...,xd``. ``eval`` counts from
1 and floats use the shortest decimal that round-trips (``repr``), so
writing, reading and writing again reproduces the file byte for byte.
"""

import csv
import io
import json
import os
import re
import tempfile
from pathlib import Path

import numpy as np

from ..bo import RunRecord
from ..exceptions import InvalidArgumentError

SUMMARY_NAME = "summary.json"
_CSV_NAME = re.compile(r"^(?P<algorithm>.+)_run(?P<run>\d+)\.csv$")


def _fmt(v) -> str:
    return repr(float(v))


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and an atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_name(algorithm: str, run: int) -> str:
    return f"{algorithm}_run{run:03d}.csv"


def record_to_csv(record: RunRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["run", "algorithm", "eval", "best_f", "f"] + [f"x{i + 1}" for i in range(record.d)])
    for i in range(record.n):
        w.writerow(
            [record.run, record.algorithm, i + 1, _fmt(record.best_f[i]), _fmt(record.f[i])]
            + [_fmt(v) for v in record.x[i]]
        )
    return buf.getvalue()


def csv_to_record(text: str, problem: str = "") -> RunRecord:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][:5] != ["run", "algorithm", "eval", "best_f", "f"]:
        raise InvalidArgumentError("not a run CSV: bad header")
    d = len(rows[0]) - 5
    body = rows[1:]
    if not body:
        raise InvalidArgumentError("run CSV has no rows")
    for k, row in enumerate(body, start=1):
        if len(row) != d + 5 or int(row[2]) != k:
            raise InvalidArgumentError(f"malformed row {k}")
    return RunRecord(
        algorithm=body[0][1],
        problem=problem,
        d=d,
        x=np.array([[float(v) for v in row[5:]] for row in body]).reshape(len(body), d),
        f=np.array([float(row[4]) for row in body]),
        best_f=np.array([float(row[3]) for row in body]),
        coords=np.full(len(body), -1, dtype=int),
        run=int(body[0][0]),
    )


def write_run_csv(directory, record: RunRecord) -> Path:
    path = Path(directory) / csv_name(record.algorithm, record.run)
    atomic_write_text(path, record_to_csv(record))
    return path


def read_run_csv(path, problem: str = "") -> RunRecord:
    return csv_to_record(Path(path).read_text(encoding="utf-8"), problem)


def list_run_csvs(directory):
    """Run CSVs in ``directory``, sorted by (algorithm, run)."""
    found = []
    for p in Path(directory).iterdir():
        m = _CSV_NAME.match(p.name)
        if m and p.is_file():
            found.append((m["algorithm"], int(m["run"]), p))
    return [p for _, _, p in sorted(found)]


def read_campaign(directory, problem: str = ""):
    paths = list_run_csvs(directory)
    if not paths:
        raise InvalidArgumentError(f"no run CSVs in {directory}")
    return [read_run_csv(p, problem) for p in paths]


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_summary(directory, summary: dict) -> Path:
    path = Path(directory) / SUMMARY_NAME
    atomic_write_text(path, dump_json(summary))
    return path


def read_summary(directory) -> dict:
    return json.loads((Path(directory) / SUMMARY_NAME).read_text(encoding="utf-8"))
