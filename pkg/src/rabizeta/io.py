"""Output files and run configuration for the command line.

CSV follows RFC 4180 (CRLF line ends, minimal quoting), JSON is UTF-8 with
sorted keys, and floats are written with ``repr`` so they re-parse exactly.
Every file is written to a temporary name in the target directory and then
renamed into place.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import os
import tempfile
from html import escape
from pathlib import Path

import numpy as np

from .errors import DomainError

__all__ = [
    "atomic_write",
    "csv_text",
    "read_csv",
    "to_jsonable",
    "json_text",
    "svg_plot",
    "CONFIG_KEYS",
    "load_config",
    "config_text",
]


def atomic_write(path, text: str) -> Path:
    """Write ``text`` to ``path`` via a temporary file and ``os.replace``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v))
    return str(v)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def read_csv(text: str):
    """``(header, rows)`` with cells left as strings."""
    rows = list(csv.reader(io.StringIO(text, newline="")))
    return rows[0], rows[1:]


def to_jsonable(obj):
    """Convert numpy scalars and arrays, complex numbers and dataclass-like results."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else repr(f)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return [to_jsonable(z.real), to_jsonable(z.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def json_text(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    step = 10 ** math.floor(math.log10((hi - lo) / n))
    for m in (1, 2, 5, 10):
        if (hi - lo) / (m * step) <= n:
            step *= m
            break
    start = math.ceil(lo / step) * step
    return [start + k * step for k in range(int((hi - start) / step + 1e-9) + 1)]


def svg_plot(x, curves, baselines=(), title="", xlabel="", ylabel="", labels=None) -> str:
    """Line plot in an 800x600 viewBox.

    Parameters
    ----------
    x : array_like
        Shared abscissae.
    curves : array_like
        One column per curve.
    baselines : sequence of float
        Drawn as dashed horizontal lines.
    """
    x = np.asarray(x, dtype=float)
    ys = np.asarray(curves, dtype=float).reshape(x.size, -1)
    W, H, L, R, T, B = 800, 600, 70, 20, 40, 60
    lo = min(ys.min(), min(baselines, default=ys.min()))
    hi = max(ys.max(), max(baselines, default=ys.max()))
    pad = 0.05 * (hi - lo or 1.0)
    lo, hi = lo - pad, hi + pad
    x0, x1 = (x.min(), x.max()) if x.max() > x.min() else (x.min() - 0.5, x.max() + 0.5)

    def px(v):
        return L + (v - x0) / (x1 - x0) * (W - L - R)

    def py(v):
        return H - B - (v - lo) / (hi - lo) * (H - T - B)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>',
        f'<line x1="{L}" y1="{H - B}" x2="{W - R}" y2="{H - B}" stroke="black"/>',
        f'<line x1="{L}" y1="{T}" x2="{L}" y2="{H - B}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{px(t):.2f}" y1="{H - B}" x2="{px(t):.2f}" y2="{H - B + 5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.2f}" y="{H - B + 20}" text-anchor="middle" font-size="12">{t:g}</text>')
    for t in _ticks(lo, hi):
        out.append(f'<line x1="{L - 5}" y1="{py(t):.2f}" x2="{L}" y2="{py(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{L - 8}" y="{py(t) + 4:.2f}" text-anchor="end" font-size="12">{t:g}</text>')
    out.append(f'<text x="{W / 2}" y="{H - 15}" text-anchor="middle" font-size="14">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{H / 2}" text-anchor="middle" font-size="14" '
               f'transform="rotate(-90 18 {H / 2})">{escape(ylabel)}</text>')
    for b in baselines:
        out.append(f'<line x1="{L}" y1="{py(b):.2f}" x2="{W - R}" y2="{py(b):.2f}" stroke="gray" '
                   f'stroke-dasharray="6,4"/>')
    for j in range(ys.shape[1]):
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, ys[:, j]))
        out.append(f'<polyline fill="none" stroke="{_COLORS[j % len(_COLORS)]}" stroke-width="1.5" '
                   f'points="{pts}"/>')
    if labels:
        for j, lab in enumerate(labels[:12]):
            yy = T + 10 + 16 * j
            c = _COLORS[j % len(_COLORS)]
            out.append(f'<line x1="{W - R - 90}" y1="{yy}" x2="{W - R - 70}" y2="{yy}" stroke="{c}"/>')
            out.append(f'<text x="{W - R - 65}" y="{yy + 4}" font-size="12">{escape(str(lab))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------

CONFIG_KEYS = {
    "model": {"g": float, "delta": float, "eps": float},
    "series": {"lambda_max": int, "points_per_lambda": int, "seed": int, "replicates": int},
    "zeta": {"s": complex, "tau": str, "route": str, "n": int, "j_cut": int},
    "grid": {"grid": str, "g_min": float, "g_max": float, "steps": int, "beta": str},
    "spectrum": {"jmax": int, "tol": float},
    "output": {"out": str},
}


def load_config(path) -> dict:
    """Read a ``key = value`` file with ``[section]`` headers into ``{key: value}``.

    Unknown sections or keys raise :class:`DomainError`.
    """
    cp = configparser.ConfigParser(interpolation=None)
    with open(path, encoding="utf-8") as fh:
        cp.read_file(fh)
    out = {}
    for sec in cp.sections():
        if sec not in CONFIG_KEYS:
            raise DomainError(f"unknown config section [{sec}]")
        for key, raw in cp.items(sec):
            typ = CONFIG_KEYS[sec].get(key)
            if typ is None:
                raise DomainError(f"unknown config key {key!r} in [{sec}]")
            try:
                out[key] = typ(raw.replace(" ", "")) if typ is complex else typ(raw)
            except ValueError as exc:
                raise DomainError(f"bad value for {key}: {raw!r}") from exc
    return out


def config_text(values: dict) -> str:
    """Resolved configuration in the same ``[section]`` format, known keys only."""
    cp = configparser.ConfigParser(interpolation=None)
    for sec, keys in CONFIG_KEYS.items():
        items = {k: values[k] for k in keys if values.get(k) is not None}
        if items:
            cp[sec] = {k: repr(v) if isinstance(v, float) else str(v) for k, v in items.items()}
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()
