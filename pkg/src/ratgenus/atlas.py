"""Batch tables of simple-knot invariants over all lens spaces up to a given p.

One record per (p, q, k). Work is split by p across worker processes and
merged in ascending order, so the bytes written never depend on ``jobs``.
"""

from __future__ import annotations

import csv
import io
import json
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from itertools import repeat
from math import gcd
from typing import BinaryIO, Iterable, Iterator, Optional

import numpy as np

from .core import LabelingInconsistency, format_rational, parse_rational
from .lensd import d_all
from .theta import difference_maxima, table_array

SCHEMA = "ratgenus-atlas-v1"
CSV_HEADER = "p,q,k,order,theta_lb,raw_bound,exact,chi,rational_norm,fibered,maximizers"
FORMATS = ("json", "csv")

_JSON_ROW = (
    '{"p":%d,"q":%d,"k":%d,"order":%d,"theta_lb":"%d/%d","raw_bound":"%d/%d",'
    '"exact":true,"chi":%d,"rational_norm":"%d/%d","fibered":%s,"maximizers":[%s]}'
)
_CSV_ROW = "%d,%d,%d,%d,%d/%d,%d/%d,true,%d,%d/%d,%s,%s\n"


@dataclass(frozen=True)
class AtlasRecord:
    p: int
    q: int
    k: int
    order_m: int
    theta_lb: Fraction
    raw_bound: Fraction
    exact: bool
    chi: Optional[int]
    rational_norm: Optional[Fraction]
    fibered: Optional[bool]
    maximizers: tuple[int, ...]

    @property
    def key(self):
        return self.p, self.q, self.k


def _columns(p: int, q: int) -> dict:
    """All per-class quantities for L(p, q) as plain lists, indexed by k."""
    d = d_all((p, q))
    den = d.denominator
    best, counts, maximizers = difference_maxima(table_array(d))
    ks = np.arange(p, dtype=np.int64)
    order = p // np.gcd(ks, p)

    raw_num = best - den
    g = np.gcd(raw_num, den)
    raw_n, raw_d = raw_num // g, den // g

    chi_scaled = order * (den - best)
    bad = np.nonzero(chi_scaled % den)[0]
    if bad.size:
        raise LabelingInconsistency(f"non-integral chi at L({p},{q}), k={int(bad[0])}")
    chi = chi_scaled // den

    norm_num = np.maximum(0, -chi)
    norm_den = 2 * order
    g = np.gcd(norm_num, norm_den)

    positive = raw_n > 0
    return {
        "order": order.tolist(),
        "raw": (raw_n.tolist(), raw_d.tolist()),
        "theta": (np.where(positive, raw_n, 0).tolist(), np.where(positive, raw_d, 1).tolist()),
        "chi": chi.tolist(),
        "norm": ((norm_num // g).tolist(), (norm_den // g).tolist()),
        "fibered": [None] + (counts[1:] == 1).tolist(),
        "maximizers": maximizers,
    }


def _records_for(p: int, q: int) -> list[AtlasRecord]:
    c = _columns(p, q)
    return [
        AtlasRecord(
            p=p,
            q=q,
            k=k,
            order_m=c["order"][k],
            theta_lb=Fraction(c["theta"][0][k], c["theta"][1][k]),
            raw_bound=Fraction(c["raw"][0][k], c["raw"][1][k]),
            exact=True,
            chi=c["chi"][k],
            rational_norm=Fraction(c["norm"][0][k], c["norm"][1][k]),
            fibered=c["fibered"][k],
            maximizers=tuple(c["maximizers"][k]),
        )
        for k in range(p)
    ]


_FIBERED_TEXT = {
    "json": {None: "null", True: "true", False: "false"},
    "csv": {None: "", True: "true", False: "false"},
}


def _text_for(p: int, q: int, fmt: str) -> str:
    c = _columns(p, q)
    sep = "," if fmt == "json" else ";"
    labels = [str(m[0]) if len(m) == 1 else sep.join(map(str, m)) for m in c["maximizers"]]
    fibered = list(map(_FIBERED_TEXT[fmt].__getitem__, c["fibered"]))
    rows = zip(
        repeat(p), repeat(q), range(p), c["order"],
        *c["theta"], *c["raw"], c["chi"], *c["norm"], fibered, labels,
    )
    if fmt == "json":
        return ",".join(map(_JSON_ROW.__mod__, rows))
    return "".join(map(_CSV_ROW.__mod__, rows))


def _chunk_for_p(args: tuple[int, str]) -> str:
    p, fmt = args
    parts = [_text_for(p, q, fmt) for q in range(1, p) if gcd(p, q) == 1]
    return ",".join(parts) if fmt == "json" else "".join(parts)


def _check_args(p_max: int, fmt: str = "json", jobs: int = 1) -> None:
    if p_max < 2:
        raise ValueError(f"p_max must be >= 2, got {p_max}")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")


def _chunks(p_max: int, fmt: str, jobs: int) -> Iterator[str]:
    tasks = [(p, fmt) for p in range(2, p_max + 1)]
    if jobs == 1:
        yield from map(_chunk_for_p, tasks)
        return
    with multiprocessing.get_context("spawn").Pool(jobs) as pool:
        # imap keeps submission order, which is already sorted by p.
        yield from pool.imap(_chunk_for_p, tasks, chunksize=1)


def write_atlas(stream: BinaryIO, p_max: int, fmt: str = "json", jobs: int = 1) -> None:
    """Stream the serialized atlas to a binary file-like object."""
    _check_args(p_max, fmt, jobs)
    if fmt == "json":
        stream.write(('{"schema":"%s","records":[' % SCHEMA).encode())
        first = True
        for chunk in _chunks(p_max, fmt, jobs):
            if not chunk:
                continue
            if not first:
                stream.write(b",")
            stream.write(chunk.encode())
            first = False
        stream.write(b"]}")
    else:
        stream.write((CSV_HEADER + "\n").encode())
        for chunk in _chunks(p_max, fmt, jobs):
            stream.write(chunk.encode())


def generate_atlas(p_max: int, jobs: int = 1) -> list[AtlasRecord]:
    """Every simple-knot record for 2 <= p <= p_max, sorted by (p, q, k)."""
    _check_args(p_max, jobs=jobs)
    pairs = [(p, q) for p in range(2, p_max + 1) for q in range(1, p) if gcd(p, q) == 1]
    if jobs == 1:
        batches = [_records_for(p, q) for p, q in pairs]
    else:
        with multiprocessing.get_context("spawn").Pool(jobs) as pool:
            batches = pool.starmap(_records_for, pairs)
    records = [r for batch in batches for r in batch]
    records.sort(key=lambda r: r.key)
    return records


def _opt(x, conv):
    return None if x is None else conv(x)


def record_to_json_dict(r: AtlasRecord) -> dict:
    return {
        "p": r.p,
        "q": r.q,
        "k": r.k,
        "order": r.order_m,
        "theta_lb": format_rational(r.theta_lb),
        "raw_bound": format_rational(r.raw_bound),
        "exact": r.exact,
        "chi": r.chi,
        "rational_norm": _opt(r.rational_norm, format_rational),
        "fibered": r.fibered,
        "maximizers": list(r.maximizers),
    }


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def emit_records(records: Iterable[AtlasRecord], fmt: str = "json") -> bytes:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    records = list(records)
    if fmt == "json":
        body = ",".join(json.dumps(record_to_json_dict(r), separators=(",", ":")) for r in records)
        return ('{"schema":"%s","records":[%s]}' % (SCHEMA, body)).encode("utf-8")
    lines = [CSV_HEADER]
    for r in records:
        cells = [r.p, r.q, r.k, r.order_m, r.theta_lb, r.raw_bound, r.exact, r.chi, r.rational_norm, r.fibered]
        lines.append(",".join(map(_csv_cell, cells)) + "," + ";".join(map(str, r.maximizers)))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _bool(text: str) -> Optional[bool]:
    return {"true": True, "false": False, "": None}[text]


def parse_records(data: bytes, fmt: str = "json") -> list[AtlasRecord]:
    text = data.decode("utf-8")
    out = []
    if fmt == "json":
        doc = json.loads(text)
        if doc.get("schema") != SCHEMA:
            raise ValueError(f"unexpected schema {doc.get('schema')!r}")
        for d in doc["records"]:
            out.append(
                AtlasRecord(
                    p=d["p"],
                    q=d["q"],
                    k=d["k"],
                    order_m=d["order"],
                    theta_lb=parse_rational(d["theta_lb"]),
                    raw_bound=parse_rational(d["raw_bound"]),
                    exact=d["exact"],
                    chi=d["chi"],
                    rational_norm=_opt(d["rational_norm"], parse_rational),
                    fibered=d["fibered"],
                    maximizers=tuple(d["maximizers"]),
                )
            )
        return out
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader)
    if ",".join(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    for row in reader:
        p, q, k, order, theta, raw, exact, chi, norm, fibered, mx = row
        out.append(
            AtlasRecord(
                p=int(p),
                q=int(q),
                k=int(k),
                order_m=int(order),
                theta_lb=parse_rational(theta),
                raw_bound=parse_rational(raw),
                exact=_bool(exact),
                chi=int(chi) if chi else None,
                rational_norm=parse_rational(norm) if norm else None,
                fibered=_bool(fibered),
                maximizers=tuple(int(x) for x in mx.split(";")) if mx else (),
            )
        )
    return out
