"""Persisted formats: catalog JSON, coefficient JSON-lines, sample CSV,
decay CSV, sphere CSV, and verdict JSON.

Float fields are written with 17 significant digits so a load/save
round-trip is bit-exact.
"""

import csv
import io
import json
import math

import numpy as np

from .errors import DataError
from .fourier import CoefficientField, hs_norm


def _fmt(x):
    return float(repr(float(x)))


def catalog_to_json(catalog):
    return json.dumps(
        [
            {
                "label": list(r.label),
                "dim": r.dim,
                "lambda_sq": r.lambda_sq,
                "bracket": r.bracket,
            }
            for r in catalog
        ]
    )


def field_to_jsonl(coeffs):
    """One line per stored class: {"label": [...], "matrix": [[[re, im], ...]]}."""
    lines = []
    for label in coeffs.labels():
        mat = coeffs.blocks[label]
        body = [
            [[float(v.real), float(v.imag)] for v in row] for row in mat
        ]
        lines.append(json.dumps({"label": list(label), "matrix": body}))
    return "\n".join(lines) + ("\n" if lines else "")


def field_from_jsonl(text, catalog):
    out = CoefficientField(catalog)
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
            label = tuple(int(c) for c in rec["label"])
            mat = np.array(
                [[complex(re, im) for re, im in row] for row in rec["matrix"]]
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise DataError("bad coefficient record on line %d: %s" % (ln, exc))
        out[label] = mat
    return out


def samples_to_csv(values):
    """Node-major (C-order) flattening, columns re, im."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["re", "im"])
    for v in np.asarray(values, dtype=complex).ravel():
        w.writerow(["%.17g" % v.real, "%.17g" % v.imag])
    return buf.getvalue()


def samples_from_csv(text, shape):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["re", "im"]:
        raise DataError("sample CSV must start with the header re,im")
    try:
        flat = np.array([complex(float(r[0]), float(r[1])) for r in rows[1:] if r])
    except (ValueError, IndexError) as exc:
        raise DataError("bad sample row: %s" % exc)
    if flat.size != int(np.prod(shape)):
        raise DataError(
            "sample count %d does not fill grid shape %r" % (flat.size, tuple(shape))
        )
    return flat.reshape(shape)


def decay_csv(coeffs):
    """Columns bracket, dim, hs_norm, log_hs_norm over nonzero classes."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["bracket", "dim", "hs_norm", "log_hs_norm"])
    for label in coeffs.labels():
        rep = coeffs.catalog.lookup(label)
        hs = hs_norm(coeffs.blocks[label])
        if hs <= 0.0:
            continue
        w.writerow(
            ["%.17g" % rep.bracket, rep.dim, "%.17g" % hs, "%.17g" % math.log(hs)]
        )
    return buf.getvalue()


def sphere_csv(grid, sphere_values):
    """Rows (beta, alpha, re, im) over the (beta, alpha) projected grid."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["beta", "alpha", "re", "im"])
    vals = np.asarray(sphere_values, dtype=complex)
    for bi, beta in enumerate(grid.beta):
        for ai, alpha in enumerate(grid.alpha):
            v = vals[bi, ai]
            w.writerow(
                ["%.17g" % beta, "%.17g" % alpha, "%.17g" % v.real, "%.17g" % v.imag]
            )
    return buf.getvalue()


def verdict_to_json(verdict):
    model = verdict.model
    return json.dumps(
        {
            "s": verdict.s,
            "mode": "R" if verdict.mode == "roumieu" else "B",
            "pass": bool(verdict.passed),
            "margin": verdict.margin if math.isfinite(verdict.margin) else (
                "inf" if verdict.margin > 0 else "-inf"
            ),
            "B": model.B if model else None,
            "K": model.K if model else None,
            "r2": model.r2 if model else None,
            "witness_label": list(verdict.witness_label)
            if verdict.witness_label is not None
            else None,
            "flags": list(verdict.flags),
        }
    )
