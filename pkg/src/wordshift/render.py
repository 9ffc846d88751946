"""Deterministic SVG rendering of shift results.

The graph is a horizontal bar chart: one row per ranked word, bars pointing
right for positive contributions and left for negative ones. Rows carry up
to two sub-bars, the frequency part and the score part. When the parts
agree in sign they stack; when they counteract, the cancelled portions are
drawn faded and only the surviving remainder is solid, so the net bar
length still reads as the word's total contribution.

Color encodes role: yellow for words averaging above the reference score,
blue for below (lighter shades when the word's frequency fell), orange for
score rises and purple for score falls. Borrowed scores are starred.

Output is a standalone SVG 1.1 document with no external references;
identical inputs produce byte-identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from .shift import (
    DIFF_CLASS_ORDER,
    FREQ_CLASS_ORDER,
    SIGN_DIFF_DOWN,
    SIGN_DIFF_UP,
    SIGN_FREQ_DOWN,
    SIGN_SCORE_DOWN,
    SIGN_SCORE_UP,
    ShiftResult,
    WordContribution,
)

DEFAULT_PALETTE = {
    "positive": "#e3b505",
    "negative": "#2e86c1",
    "score_rise": "#e67e22",
    "score_fall": "#8e44ad",
}
NEUTRAL_COLOR = "#9e9e9e"
AXIS_COLOR = "#555555"
TEXT_COLOR = "#222222"
TOTAL_BAR_COLOR = "#666666"

ROW_HEIGHT = 18
BAR_HEIGHT = 12
CLASS_ROW_HEIGHT = 16
CLASS_BAR_HEIGHT = 10
LABEL_GUTTER = 150
MAX_LABEL_CHARS = 24


@dataclass(frozen=True)
class RenderOptions:
    """Knobs for the graph layout; defaults mirror the canonical figure."""

    top_n: int = 50
    width: int = 900
    height: int | None = None
    palette: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    cumulative_inset: str | None = "abs"
    corpus_size_inset: bool = True
    title: str | None = None
    show_class_totals: bool = True
    fade_opacity: float = 0.35
    light_blend: float = 0.55

    def __post_init__(self) -> None:
        if self.top_n < 1:
            raise ValueError(f"top_n must be >= 1, got {self.top_n}")
        missing = set(DEFAULT_PALETTE) - set(self.palette)
        if missing:
            raise ValueError(f"palette is missing roles: {', '.join(sorted(missing))}")
        roles = [self.palette[key] for key in sorted(DEFAULT_PALETTE)]
        if len(set(roles)) != len(roles):
            raise ValueError("palette colors must be distinct per role")
        if self.cumulative_inset not in (None, "abs", "signed"):
            raise ValueError(f"cumulative_inset must be 'abs', 'signed', or None, got {self.cumulative_inset!r}")
        if not 0.0 < self.fade_opacity <= 1.0:
            raise ValueError("fade_opacity must be in (0, 1]")


@dataclass(frozen=True)
class GraphDocument:
    """Finished SVG bytes plus the machine-readable legend embedded in them."""

    svg: bytes
    legend: dict

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.svg)


def _lighten(color: str, blend: float) -> str:
    r, g, b = (int(color[i : i + 2], 16) for i in (1, 3, 5))
    mix = lambda channel: round(channel + (255 - channel) * blend)
    return f"#{mix(r):02x}{mix(g):02x}{mix(b):02x}"


def _truncate(word: str) -> str:
    if len(word) <= MAX_LABEL_CHARS:
        return word
    head = (MAX_LABEL_CHARS - 1) // 2
    tail = MAX_LABEL_CHARS - 1 - head
    return word[:head] + "…" + word[-tail:]


def _fmt(value: float) -> str:
    return f"{value:.2f}"


class _Svg:
    def __init__(self) -> None:
        self.parts: list[str] = []

    def add(self, fragment: str) -> None:
        self.parts.append(fragment)

    def rect(self, x: float, y: float, w: float, h: float, fill: str,
             opacity: float | None = None, extra: str = "") -> None:
        opacity_attr = "" if opacity is None else f' fill-opacity="{opacity}"'
        self.add(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}"'
            f' fill="{fill}"{opacity_attr}{extra}/>'
        )

    def line(self, x1: float, y1: float, x2: float, y2: float,
             stroke: str = AXIS_COLOR, width: float = 1.0, dash: str | None = None) -> None:
        dash_attr = "" if dash is None else f' stroke-dasharray="{dash}"'
        self.add(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"'
            f' stroke="{stroke}" stroke-width="{width}"{dash_attr}/>'
        )

    def text(self, x: float, y: float, content: str, size: int = 11,
             anchor: str = "start", color: str = TEXT_COLOR, cls: str | None = None,
             weight: str | None = None) -> None:
        cls_attr = "" if cls is None else f' class="{cls}"'
        weight_attr = "" if weight is None else f' font-weight="{weight}"'
        self.add(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" text-anchor="{anchor}"'
            f' fill="{color}"{cls_attr}{weight_attr}>{escape(content)}</text>'
        )

    def polyline(self, points: Sequence[tuple[float, float]], stroke: str, width: float = 1.5) -> None:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        self.add(f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{width}"/>')


def _drawable(contributions: Sequence[WordContribution]) -> list[WordContribution]:
    return [
        c for c in contributions
        if c.delta_total != 0.0 or c.freq_component != 0.0 or c.score_component != 0.0
    ]


def _row_extent(c: WordContribution) -> float:
    if c.freq_component * c.score_component >= 0.0:
        return abs(c.freq_component) + abs(c.score_component)
    return max(abs(c.freq_component), abs(c.score_component))


def _freq_color(c: WordContribution, options: RenderOptions) -> str:
    if c.cls.sign_score == SIGN_SCORE_UP:
        base = options.palette["positive"]
    elif c.cls.sign_score == SIGN_SCORE_DOWN:
        base = options.palette["negative"]
    else:
        base = NEUTRAL_COLOR
    if c.cls.sign_freq == SIGN_FREQ_DOWN:
        return _lighten(base, options.light_blend)
    return base


def _diff_color(c: WordContribution, options: RenderOptions) -> str:
    if c.cls.sign_diff == SIGN_DIFF_UP:
        return options.palette["score_rise"]
    if c.cls.sign_diff == SIGN_DIFF_DOWN:
        return options.palette["score_fall"]
    return NEUTRAL_COLOR


def _legend(options: RenderOptions) -> dict:
    return {
        "palette": {key: options.palette[key] for key in sorted(DEFAULT_PALETTE)},
        "light_blend": options.light_blend,
        "fade_opacity": options.fade_opacity,
        "roles": {
            "positive": "average word score above the reference; deeper shade = frequency rose",
            "negative": "average word score below the reference; lighter shade = frequency fell",
            "score_rise": "word score higher in corpus 2 than corpus 1",
            "score_fall": "word score lower in corpus 2 than corpus 1",
        },
        "marks": {"borrowed_score": "*"},
    }


def render_shift_graph(result: ShiftResult, options: RenderOptions = RenderOptions()) -> GraphDocument:
    """Render ``result`` as a standalone SVG word shift graph."""
    drawable = _drawable(result.contributions)
    if not drawable:
        raise ValueError("result has no nonzero contributions to draw")
    if options.cumulative_inset == "signed" and result.cumulative_signed is None:
        raise ValueError("signed cumulative inset unavailable: total difference is zero; use 'abs'")
    rows = drawable[: options.top_n]

    width = options.width
    x_center = width / 2.0
    half = width / 2.0 - LABEL_GUTTER
    scale = 0.9 * half / max(_row_extent(c) for c in rows)

    class_keys = [key for key in (*FREQ_CLASS_ORDER, *DIFF_CLASS_ORDER) if key in result.class_sums]
    class_keys += sorted(key for key in result.class_sums if key not in class_keys)

    title_h = 56.0
    class_h = (len(class_keys) + 1) * CLASS_ROW_HEIGHT + 24 if options.show_class_totals else 0.0
    main_top = title_h + class_h + 8
    main_h = len(rows) * ROW_HEIGHT + 8
    insets_on = options.cumulative_inset is not None or options.corpus_size_inset
    inset_h = 180.0 if insets_on else 0.0
    height = options.height if options.height is not None else int(main_top + main_h + inset_h + 16)

    legend = _legend(options)
    svg = _Svg()
    svg.add(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    )
    svg.add("<metadata>" + escape(json.dumps(legend, sort_keys=True)) + "</metadata>")
    svg.rect(0, 0, width, height, "#ffffff")

    label1, label2 = result.labels
    title = options.title
    if title is None:
        title = (
            f"Φ({label1}) = {result.phi1_total:.4f}   "
            f"Φ({label2}) = {result.phi2_total:.4f}   "
            f"δΦ = {result.delta_phi:+.4f}"
        )
    svg.text(x_center, 24, title, size=15, anchor="middle", weight="bold", cls="title")
    subtitle = (
        f"measure: {result.measure} | reference = {result.reference_score:.6g} | "
        f"top {len(rows)} of {len(drawable)} contributing words"
    )
    svg.text(x_center, 42, subtitle, size=11, anchor="middle", cls="subtitle")

    class_colors = {
        FREQ_CLASS_ORDER[0]: options.palette["positive"],
        FREQ_CLASS_ORDER[1]: _lighten(options.palette["positive"], options.light_blend),
        FREQ_CLASS_ORDER[2]: options.palette["negative"],
        FREQ_CLASS_ORDER[3]: _lighten(options.palette["negative"], options.light_blend),
        SIGN_DIFF_UP: options.palette["score_rise"],
        SIGN_DIFF_DOWN: options.palette["score_fall"],
    }

    if options.show_class_totals:
        panel_top = title_h + 12
        svg.text(x_center, panel_top, "contribution totals by type", size=11, anchor="middle",
                 color=AXIS_COLOR, cls="class-heading")
        bar_values = [("Σ", result.delta_phi, TOTAL_BAR_COLOR)]
        bar_values += [(key, result.class_sums[key], class_colors.get(key, NEUTRAL_COLOR))
                       for key in class_keys]
        v_max = max(abs(value) for _, value, _ in bar_values)
        class_scale = (0.9 * half / v_max) if v_max > 0.0 else 0.0
        y = panel_top + 8
        for key, value, color in bar_values:
            w = abs(value) * class_scale
            x = x_center if value >= 0.0 else x_center - w
            svg.rect(x, y + (CLASS_ROW_HEIGHT - CLASS_BAR_HEIGHT) / 2, w, CLASS_BAR_HEIGHT, color)
            svg.text(x_center - half - 8, y + CLASS_ROW_HEIGHT - 4, key, anchor="end", cls="class-label")
            tip = x_center + w + 4 if value >= 0.0 else x_center - w - 4
            anchor = "start" if value >= 0.0 else "end"
            svg.text(tip, y + CLASS_ROW_HEIGHT - 4, format(value, ".3g"), size=10,
                     anchor=anchor, color=AXIS_COLOR, cls="class-value")
            y += CLASS_ROW_HEIGHT
        svg.line(x_center, panel_top + 8, x_center, y, width=0.75)

    main_bottom = main_top + len(rows) * ROW_HEIGHT
    svg.line(x_center, main_top, x_center, main_bottom)

    for index, c in enumerate(rows):
        y = main_top + index * ROW_HEIGHT + (ROW_HEIGHT - BAR_HEIGHT) / 2
        f_px = c.freq_component * scale
        s_px = c.score_component * scale
        row_attr = f' data-row="{index}"'
        if f_px * s_px >= 0.0:
            # congruent parts stack outward in the shared direction
            if f_px != 0.0:
                svg.rect(x_center + min(0.0, f_px), y, abs(f_px), BAR_HEIGHT,
                         _freq_color(c, options), extra=row_attr + ' data-part="freq"')
            if s_px != 0.0:
                start, end = f_px, f_px + s_px
                svg.rect(x_center + min(start, end), y, abs(s_px), BAR_HEIGHT,
                         _diff_color(c, options), extra=row_attr + ' data-part="score"')
            tip_px = f_px + s_px
        else:
            if abs(f_px) >= abs(s_px):
                win_px, win_color, win_part = f_px, _freq_color(c, options), "freq"
                lose_px, lose_color, lose_part = s_px, _diff_color(c, options), "score"
            else:
                win_px, win_color, win_part = s_px, _diff_color(c, options), "score"
                lose_px, lose_color, lose_part = f_px, _freq_color(c, options), "freq"
            lose_w = abs(lose_px)
            win_dir = 1.0 if win_px > 0.0 else -1.0
            # the cancelled portions on both sides are faded; the surviving
            # remainder is solid so net length still reads as the total
            svg.rect(x_center + min(0.0, lose_px), y, lose_w, BAR_HEIGHT, lose_color,
                     opacity=options.fade_opacity, extra=row_attr + f' data-part="{lose_part}-offset"')
            svg.rect(x_center + min(0.0, win_dir * lose_w), y, lose_w, BAR_HEIGHT, win_color,
                     opacity=options.fade_opacity, extra=row_attr + f' data-part="{win_part}-offset"')
            remainder = abs(win_px) - lose_w
            if remainder > 0.0:
                start = win_dir * lose_w
                end = win_px
                svg.rect(x_center + min(start, end), y, remainder, BAR_HEIGHT, win_color,
                         extra=row_attr + f' data-part="{win_part}"')
            else:
                # exact cancellation: zero-width remainder marker on the axis
                svg.line(x_center, y - 1, x_center, y + BAR_HEIGHT + 1, stroke=TEXT_COLOR, width=1.5)
            tip_px = win_px
        label = f"{index + 1}. {_truncate(c.word)}" + ("*" if c.borrowed else "")
        if tip_px >= 0.0:
            extent = max(f_px, s_px, f_px + s_px, 0.0)
            svg.text(x_center + extent + 5, y + BAR_HEIGHT - 2, label, cls="word-label")
        else:
            extent = min(f_px, s_px, f_px + s_px, 0.0)
            svg.text(x_center + extent - 5, y + BAR_HEIGHT - 2, label, anchor="end", cls="word-label")

    max_extent = max(_row_extent(c) for c in rows)
    svg.line(x_center - 0.9 * half, main_bottom + 4, x_center + 0.9 * half, main_bottom + 4, width=0.5)
    for tick_value, tick_x in ((-max_extent, x_center - 0.9 * half), (0.0, x_center),
                               (max_extent, x_center + 0.9 * half)):
        svg.text(tick_x, main_bottom + 16, format(tick_value, ".3g"), size=10,
                 anchor="middle", color=AXIS_COLOR, cls="axis-tick")

    if insets_on:
        inset_top = main_bottom + 34
        if options.cumulative_inset is not None:
            series = (result.cumulative_abs if options.cumulative_inset == "abs"
                      else result.cumulative_signed)
            _draw_cumulative(svg, series, options, x0=30.0, y0=inset_top, w=260.0, h=120.0)
        if options.corpus_size_inset:
            _draw_corpus_sizes(svg, result, x0=width - 290.0, y0=inset_top, w=260.0)

    svg.add("</svg>")
    body = "\n".join(svg.parts) + "\n"
    return GraphDocument(svg=body.encode("utf-8"), legend=legend)


def _draw_cumulative(svg: _Svg, series: Sequence[float], options: RenderOptions,
                     x0: float, y0: float, w: float, h: float) -> None:
    mode = options.cumulative_inset
    heading = ("cumulative share of total |contribution| by rank" if mode == "abs"
               else "running contribution total / |total difference| by rank")
    svg.text(x0, y0 - 6, heading, size=10, color=AXIS_COLOR, cls="inset-heading")
    svg.rect(x0, y0, w, h, "#ffffff")
    svg.add(
        f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(w)}" height="{_fmt(h)}"'
        f' fill="none" stroke="{AXIS_COLOR}" stroke-width="0.75"/>'
    )
    n = len(series)
    lo = min(0.0, min(series))
    hi = max(1.0, max(series))
    span = hi - lo
    points = []
    for i, value in enumerate(series):
        x = x0 + (value - lo) / span * w
        y = y0 + (i / (n - 1)) * h if n > 1 else y0 + h / 2
        points.append((x, y))
    marker_rank = min(options.top_n, n)
    marker_y = y0 + ((marker_rank - 1) / (n - 1)) * h if n > 1 else y0 + h / 2
    svg.line(x0, marker_y, x0 + w, marker_y, stroke=AXIS_COLOR, width=0.75, dash="3,3")
    svg.text(x0 + w + 4, marker_y + 3, f"rank {marker_rank}", size=9, color=AXIS_COLOR, cls="inset-marker")
    svg.polyline(points, stroke=TEXT_COLOR)
    svg.text(x0, y0 + h + 12, format(lo, ".3g"), size=9, color=AXIS_COLOR, cls="inset-axis")
    svg.text(x0 + w, y0 + h + 12, format(hi, ".3g"), size=9, anchor="end", color=AXIS_COLOR, cls="inset-axis")


def _draw_corpus_sizes(svg: _Svg, result: ShiftResult, x0: float, y0: float, w: float) -> None:
    svg.text(x0, y0 - 6, "corpus sizes (tokens)", size=10, color=AXIS_COLOR, cls="inset-heading")
    n1, n2 = result.corpus_sizes
    biggest = max(n1, n2, 1)
    bar_w = w - 70
    for i, (label, n) in enumerate(zip(result.labels, (n1, n2))):
        y = y0 + 10 + i * 22
        svg.text(x0, y + 10, _truncate(label), size=10, cls="inset-label")
        svg.rect(x0 + 2, y + 14, bar_w * n / biggest, 7, TOTAL_BAR_COLOR)
        svg.text(x0 + 4 + bar_w * n / biggest, y + 20, str(n), size=9, color=AXIS_COLOR, cls="inset-value")
