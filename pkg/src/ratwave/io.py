"""JSON and CSV formats shared by the library and the CLI."""

import csv
import io
import json
import sys

from .bank import WaveletBank2, moments
from .params import ParamPair, PhiParam
from .scalars import decimal_string, format_scalar


def read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj):
    """Canonical single-line JSON (stable key order, no locale dependence)."""
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def load_bank(obj, field=None):
    """Bank from its JSON object; also accepts any object nesting one under ``"bank"``."""
    if "h0" not in obj and isinstance(obj.get("bank"), dict):
        obj = obj["bank"]
    if field is not None:
        obj = dict(obj, field=field)
    return WaveletBank2.from_json(obj)


def load_phi(obj, field=None):
    if "gammas" not in obj and isinstance(obj.get("phi_q"), dict):
        obj = obj["phi_q"]
    elif "gammas" not in obj and isinstance(obj.get("phi"), dict):
        obj = obj["phi"]
    return PhiParam.from_json(obj, field)


def load_pair(obj, field=None):
    if "alpha" not in obj and isinstance(obj.get("pair"), dict):
        obj = obj["pair"]
    return ParamPair.from_json(obj, field)


def bank_rows(bank, pmax=None):
    """Table-style rows: one per tap index, then one per moment ``M_p``."""
    rows = [["k", "h0", "h0_decimal", "h1", "h1_decimal"]]
    for k, (c0, c1) in enumerate(zip(bank.h0, bank.h1)):
        rows.append([str(k), format_scalar(c0), decimal_string(c0), format_scalar(c1), decimal_string(c1)])
    if pmax is not None:
        for p, m in enumerate(moments(bank, pmax).values):
            rows.append([f"M{p}", format_scalar(m), decimal_string(m), "", ""])
    return rows


def to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def to_plain(rows):
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n" for r in rows)
