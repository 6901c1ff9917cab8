"""Minimal SVG line plots: fixed 800 x 600 canvas, axes, polylines.

No plotting dependency; output is deterministic text so artifacts can
be diffed byte for byte.
"""

from __future__ import annotations

import math

WIDTH = 800
HEIGHT = 600
_LEFT, _RIGHT, _TOP, _BOTTOM = 80, 30, 50, 60
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _transform(values, log):
    out = []
    for v in values:
        v = float(v)
        if log:
            if v <= 0.0:
                raise ValueError("log axis needs positive values")
            v = math.log10(v)
        out.append(v)
    return out


def _span(values):
    lo, hi = min(values), max(values)
    if hi - lo < 1e-12:
        lo, hi = lo - 1.0, hi + 1.0
    return lo, hi


def _tick_label(t, log):
    return "%.4g" % (10.0 ** t if log else t)


def line_plot(path, series, title="", x_label="", y_label="",
              log_x=False, log_y=False, comment=""):
    """Write a polyline plot.

    Parameters
    ----------
    path : str
        Output file.
    series : sequence of (label, xs, ys)
        One polyline per entry; points are drawn as small circles too.
    log_x, log_y : bool
        Base-10 log axes; tick labels show the original values.
    comment : str
        Optional provenance line embedded as an SVG comment.
    """
    if not series:
        raise ValueError("need at least one series")
    txs = [_transform(xs, log_x) for _, xs, _ in series]
    tys = [_transform(ys, log_y) for _, _, ys in series]
    x_lo, x_hi = _span([v for xs in txs for v in xs])
    y_lo, y_hi = _span([v for ys in tys for v in ys])
    plot_w = WIDTH - _LEFT - _RIGHT
    plot_h = HEIGHT - _TOP - _BOTTOM

    def px(v):
        return _LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v):
        return HEIGHT - _BOTTOM - (v - y_lo) / (y_hi - y_lo) * plot_h

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">' % (WIDTH, HEIGHT, WIDTH, HEIGHT),
    ]
    if comment:
        lines.append("<!-- %s -->" % comment)
    lines.append('<rect width="%d" height="%d" fill="white"/>' % (WIDTH, HEIGHT))
    if title:
        lines.append('<text x="%d" y="28" font-size="18" text-anchor="middle" '
                     'font-family="sans-serif">%s</text>' % (WIDTH // 2, title))
    # axes
    lines.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
                 % (_LEFT, HEIGHT - _BOTTOM, WIDTH - _RIGHT, HEIGHT - _BOTTOM))
    lines.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
                 % (_LEFT, _TOP, _LEFT, HEIGHT - _BOTTOM))
    for i in range(5):
        tx = x_lo + (x_hi - x_lo) * i / 4.0
        ty = y_lo + (y_hi - y_lo) * i / 4.0
        lines.append('<line x1="%.2f" y1="%d" x2="%.2f" y2="%d" stroke="black"/>'
                     % (px(tx), HEIGHT - _BOTTOM, px(tx), HEIGHT - _BOTTOM + 5))
        lines.append('<text x="%.2f" y="%d" font-size="12" text-anchor="middle" '
                     'font-family="sans-serif">%s</text>'
                     % (px(tx), HEIGHT - _BOTTOM + 20, _tick_label(tx, log_x)))
        lines.append('<line x1="%d" y1="%.2f" x2="%d" y2="%.2f" stroke="black"/>'
                     % (_LEFT - 5, py(ty), _LEFT, py(ty)))
        lines.append('<text x="%d" y="%.2f" font-size="12" text-anchor="end" '
                     'font-family="sans-serif">%s</text>'
                     % (_LEFT - 8, py(ty) + 4, _tick_label(ty, log_y)))
    if x_label:
        lines.append('<text x="%d" y="%d" font-size="14" text-anchor="middle" '
                     'font-family="sans-serif">%s</text>'
                     % (_LEFT + plot_w // 2, HEIGHT - 15, x_label))
    if y_label:
        lines.append('<text x="20" y="%d" font-size="14" text-anchor="middle" '
                     'font-family="sans-serif" transform="rotate(-90 20 %d)">'
                     '%s</text>' % (_TOP + plot_h // 2, _TOP + plot_h // 2, y_label))
    for index, (label, _, _) in enumerate(series):
        color = _PALETTE[index % len(_PALETTE)]
        points = " ".join("%.2f,%.2f" % (px(x), py(y))
                          for x, y in zip(txs[index], tys[index]))
        lines.append('<polyline fill="none" stroke="%s" stroke-width="1.5" '
                     'points="%s"/>' % (color, points))
        for x, y in zip(txs[index], tys[index]):
            lines.append('<circle cx="%.2f" cy="%.2f" r="3" fill="%s"/>'
                         % (px(x), py(y), color))
        ly = _TOP + 16 + 18 * index
        lines.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="%s" '
                     'stroke-width="1.5"/>'
                     % (WIDTH - _RIGHT - 160, ly - 4, WIDTH - _RIGHT - 130,
                        ly - 4, color))
        lines.append('<text x="%d" y="%d" font-size="12" '
                     'font-family="sans-serif">%s</text>'
                     % (WIDTH - _RIGHT - 124, ly, label))
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    return path
