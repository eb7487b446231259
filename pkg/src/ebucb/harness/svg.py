"""Dependency-free SVG line charts of cumulative regret."""
from __future__ import annotations

import math
from html import escape
from pathlib import Path
from typing import Sequence

import numpy as np

from .runner import AggregateResult

WIDTH, HEIGHT = 760, 460
LEFT, RIGHT, TOP, BOTTOM = 70, 190, 40, 50
MAX_POINTS = 500
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _nice_ticks(hi: float, n: int = 5) -> list[float]:
    if hi <= 0:
        return [0.0]
    raw = hi / n
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    return [i * step for i in range(int(hi / step + 1e-9) + 1)]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:g}" if abs(v) < 1e6 else f"{v:.2e}"


def _sample_idx(n: int) -> np.ndarray:
    if n <= MAX_POINTS:
        return np.arange(n)
    return np.unique(np.linspace(0, n - 1, MAX_POINTS).round().astype(int))


def render_svg(results: Sequence[AggregateResult], title: str = "", markers: Sequence[tuple[str, float]] = ()) -> str:
    """Chart text: one polyline per result plus a +/-1 stderr band.

    ``markers`` are (label, t) pairs drawn as dashed vertical lines.
    """
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM
    t_max = max([r.horizon for r in results] + [1])
    y_max = max([float(np.max(r.mean + r.stderr)) for r in results if r.horizon] + [0.0])
    y_ticks = _nice_ticks(y_max if y_max > 0 else 1.0)
    y_top = max(y_ticks[-1], y_max) or 1.0
    x_ticks = _nice_ticks(float(t_max))

    def sx(t):
        return LEFT + (t - 1) / max(t_max - 1, 1) * pw if t_max > 1 else LEFT

    def sy(v):
        return TOP + ph - v / y_top * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" font-size="15">{escape(title)}</text>',
    ]
    for v in y_ticks:
        y = _fmt(sy(v))
        out.append(f'<line x1="{LEFT}" y1="{y}" x2="{LEFT + pw}" y2="{y}" stroke="#e5e5e5"/>')
        out.append(f'<text x="{LEFT - 6}" y="{y}" text-anchor="end" dominant-baseline="middle" '
                   f'font-family="sans-serif" font-size="11">{_tick_label(v)}</text>')
    for v in x_ticks:
        if v > t_max:
            continue
        x = _fmt(sx(max(v, 1)))
        out.append(f'<line x1="{x}" y1="{TOP + ph}" x2="{x}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x}" y="{TOP + ph + 18}" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{_tick_label(v)}</text>')
    out.append(f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}" stroke="black"/>')
    out.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="12">t</text>')
    out.append(f'<text x="16" y="{TOP + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="12" '
               f'transform="rotate(-90 16 {TOP + ph / 2:.1f})">cumulative regret</text>')

    for i, res in enumerate(results):
        color = PALETTE[i % len(PALETTE)]
        if res.horizon == 0:
            continue
        idx = _sample_idx(res.horizon)
        ts = idx + 1
        upper = res.mean[idx] + res.stderr[idx]
        lower = res.mean[idx] - res.stderr[idx]
        band = [f"{_fmt(sx(t))},{_fmt(sy(v))}" for t, v in zip(ts, upper)]
        band += [f"{_fmt(sx(t))},{_fmt(sy(v))}" for t, v in zip(ts[::-1], lower[::-1])]
        out.append(f'<polygon points="{" ".join(band)}" fill="{color}" fill-opacity="0.18" stroke="none"/>')
        line = " ".join(f"{_fmt(sx(t))},{_fmt(sy(v))}" for t, v in zip(ts, res.mean[idx]))
        out.append(f'<polyline points="{line}" fill="none" stroke="{color}" stroke-width="1.6"/>')
        ly = TOP + 14 + 18 * i
        lx = LEFT + pw + 14
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        label = f"{res.agent} {res.scheme}".strip()
        out.append(f'<text x="{lx + 26}" y="{ly}" dominant-baseline="middle" font-family="sans-serif" '
                   f'font-size="11">{escape(label)}</text>')

    for label, t in markers:
        x = _fmt(sx(t))
        out.append(f'<line x1="{x}" y1="{TOP}" x2="{x}" y2="{TOP + ph}" stroke="#555" stroke-dasharray="4 3"/>')
        out.append(f'<text x="{x}" y="{TOP - 4}" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="10">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(results: Sequence[AggregateResult], path, title: str = "", markers: Sequence[tuple[str, float]] = ()) -> None:
    text = render_svg(results, title, markers)
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
