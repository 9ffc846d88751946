import json
import math
import xml.etree.ElementTree as ET

import pytest

from wordshift import (
    ComponentRow,
    RenderOptions,
    ShiftComponents,
    TokenDistribution,
    analyze,
    dictionary_components,
    relative_frequency_components,
    render_shift_graph,
    resolve_scores,
)
from wordshift.lexicon import ScoreLexicon
from wordshift.render import DEFAULT_PALETTE, LABEL_GUTTER, _lighten


def basic_result():
    d1 = TokenDistribution("one", {"orchard": 4, "blight": 1, "mud": 2, "honey": 3})
    d2 = TokenDistribution("two", {"orchard": 1, "blight": 4, "mud": 1, "honey": 4})
    lex = ScoreLexicon("lex", {"orchard": 8.0, "blight": 2.0, "mud": 3.0, "honey": 7.0}, center=5.0)
    resolved = resolve_scores(["orchard", "blight", "mud", "honey"], lex, lex)
    return analyze(dictionary_components(d1, d2, resolved, reference_score=5.0))


def generalized_result():
    components = ShiftComponents(
        measure="dictionary",
        rows=(
            ComponentRow("grain", 0.2, 0.4, 7.0, 5.5),   # counteracting parts
            ComponentRow("cloth", 0.5, 0.3, 6.0, 4.0),
            ComponentRow("email", 0.3, 0.3, 3.0, 3.5, True, False),
        ),
        reference_score=5.0,
        labels=("older", "newer"),
        corpus_sizes=(100, 150),
    )
    return analyze(components)


def svg_root(document):
    return ET.fromstring(document.svg.decode("utf-8"))


def rects_by_row(root):
    rows: dict[int, list[dict]] = {}
    for el in root.iter():
        if el.tag.endswith("rect") and "data-row" in el.attrib:
            rows.setdefault(int(el.attrib["data-row"]), []).append(el.attrib)
    return rows


def word_labels(root):
    return [el for el in root.iter() if el.tag.endswith("text") and el.attrib.get("class") == "word-label"]


class TestDeterminism:
    def test_identical_inputs_identical_bytes(self):
        first = render_shift_graph(basic_result())
        second = render_shift_graph(basic_result())
        assert first.svg == second.svg
        assert first.legend == second.legend

    def test_well_formed_xml(self):
        root = svg_root(render_shift_graph(generalized_result()))
        assert root.tag.endswith("svg")

    def test_legend_embedded_in_metadata(self):
        document = render_shift_graph(basic_result())
        root = svg_root(document)
        (metadata,) = [el for el in root.iter() if el.tag.endswith("metadata")]
        assert json.loads(metadata.text) == document.legend
        assert set(document.legend["palette"]) == set(DEFAULT_PALETTE)


class TestRows:
    def test_row_count_is_min_topn_nonzero(self):
        result = basic_result()
        nonzero = sum(1 for c in result.contributions if c.delta_total != 0.0)
        all_rows = render_shift_graph(result, RenderOptions(top_n=50))
        assert len(word_labels(svg_root(all_rows))) == nonzero
        top2 = render_shift_graph(result, RenderOptions(top_n=2))
        assert len(word_labels(svg_root(top2))) == 2

    def test_geometry_proportional_to_delta(self):
        result = generalized_result()
        options = RenderOptions(width=900)
        root = svg_root(render_shift_graph(result, options))
        x_center = options.width / 2.0
        drawable = [c for c in result.contributions
                    if c.delta_total != 0.0 or c.freq_component != 0.0 or c.score_component != 0.0]
        rows = rects_by_row(root)
        signed_px = {}
        for index, attrs in rows.items():
            total = 0.0
            for rect in attrs:
                x, w = float(rect["x"]), float(rect["width"])
                total += w if x >= x_center - 1e-6 else -w
            signed_px[index] = total
        widest = max(signed_px, key=lambda i: abs(signed_px[i]))
        scale = signed_px[widest] / drawable[widest].delta_total
        for index, total in signed_px.items():
            assert abs(total - scale * drawable[index].delta_total) <= 0.15

    def test_widest_row_spans_fixed_fraction(self):
        components = ShiftComponents(
            measure="dictionary",
            rows=(ComponentRow("solo", 0.2, 0.6, 7.0, 7.0),),
            reference_score=5.0,
            labels=("one", "two"),
            corpus_sizes=(5, 5),
        )
        result = analyze(components)
        assert result.contributions[0].delta_total > 0.0
        options = RenderOptions(width=900)
        root = svg_root(render_shift_graph(result, options))
        (attrs,) = rects_by_row(root)[0]
        half = options.width / 2.0 - LABEL_GUTTER
        assert math.isclose(float(attrs["width"]), 0.9 * half, abs_tol=0.05)
        assert float(attrs["x"]) >= options.width / 2.0 - 1e-6  # positive delta points right

    def test_borrowed_words_starred(self):
        root = svg_root(render_shift_graph(generalized_result()))
        starred = [el.text for el in word_labels(root) if el.text.endswith("*")]
        assert any("email" in label for label in starred)

    def test_long_words_middle_truncated(self):
        long_word = "antidisestablishmentarianism-occupations"
        d1 = TokenDistribution("one", {long_word: 1, "b": 3})
        d2 = TokenDistribution("two", {long_word: 3, "b": 1})
        root = svg_root(render_shift_graph(analyze(relative_frequency_components(d1, d2))))
        label = next(el.text for el in word_labels(root) if "…" in el.text)
        word_part = label.split(". ", 1)[1]
        assert len(word_part) == 24


class TestColors:
    def test_four_roles_present(self):
        root = svg_root(render_shift_graph(generalized_result()))
        fills = {el.attrib["fill"] for el in root.iter() if el.tag.endswith("rect")}
        assert DEFAULT_PALETTE["score_rise"] in fills
        assert DEFAULT_PALETTE["score_fall"] in fills
        assert DEFAULT_PALETTE["positive"] in fills or _lighten(DEFAULT_PALETTE["positive"], 0.55) in fills
        assert DEFAULT_PALETTE["negative"] in fills or _lighten(DEFAULT_PALETTE["negative"], 0.55) in fills

    def test_frequency_fall_uses_light_shade(self):
        # single decreasing above-reference word: light yellow bar
        components = ShiftComponents(
            measure="dictionary",
            rows=(ComponentRow("fade", 0.8, 0.2, 7.0, 7.0), ComponentRow("pad", 0.2, 0.8, 5.0, 5.0)),
            reference_score=5.0,
            labels=("one", "two"),
            corpus_sizes=(10, 10),
        )
        root = svg_root(render_shift_graph(analyze(components)))
        light_yellow = _lighten(DEFAULT_PALETTE["positive"], 0.55)
        fills = {el.attrib["fill"] for el in root.iter()
                 if el.tag.endswith("rect") and "data-row" in el.attrib}
        assert light_yellow in fills

    def test_counteraction_fades_offsetting_parts(self):
        options = RenderOptions(fade_opacity=0.35)
        root = svg_root(render_shift_graph(generalized_result(), options))
        faded = [el for el in root.iter()
                 if el.tag.endswith("rect") and el.attrib.get("fill-opacity") == "0.35"]
        assert len(faded) >= 2  # both offsetting components of the counteracting word
        parts = {el.attrib["data-part"] for el in faded}
        assert {"freq-offset", "score-offset"} <= parts

    def test_exact_cancellation_draws_marker_and_fades_both(self):
        # frequency part -1.5 and score part +1.5 cancel to a total of zero
        components = ShiftComponents(
            measure="dictionary",
            rows=(
                ComponentRow("cancel", 0.5, 0.25, 4.0, 8.0),
                ComponentRow("anchor", 0.25, 0.5, 2.0, 2.0),
            ),
            reference_score=0.0,
            labels=("one", "two"),
            corpus_sizes=(4, 4),
        )
        result = analyze(components)
        cancel = next(c for c in result.contributions if c.word == "cancel")
        assert cancel.delta_total == 0.0
        assert cancel.freq_component == -1.5 and cancel.score_component == 1.5
        root = svg_root(render_shift_graph(result, RenderOptions(width=900)))
        cancel_row = max(rects_by_row(root))  # zero-total row ranks last
        attrs = rects_by_row(root)[cancel_row]
        assert {rect.get("fill-opacity") for rect in attrs} == {"0.35"}
        x_center = 450.0
        markers = [
            el for el in root.iter()
            if el.tag.rsplit("}", 1)[-1] == "line"
            and el.attrib.get("stroke-width") == "1.5"
            and float(el.attrib["x1"]) == x_center == float(el.attrib["x2"])
        ]
        assert len(markers) == 1

    def test_distinct_palette_enforced(self):
        palette = dict(DEFAULT_PALETTE)
        palette["score_fall"] = palette["score_rise"]
        with pytest.raises(ValueError, match="distinct"):
            RenderOptions(palette=palette)


class TestClassPanel:
    def test_basic_shift_draws_four_classes(self):
        root = svg_root(render_shift_graph(basic_result()))
        labels = [el.text for el in root.iter()
                  if el.tag.endswith("text") and el.attrib.get("class") == "class-label"]
        assert labels == ["Σ", "+↑", "+↓", "-↑", "-↓"]

    def test_generalized_shift_draws_six_classes(self):
        root = svg_root(render_shift_graph(generalized_result()))
        labels = [el.text for el in root.iter()
                  if el.tag.endswith("text") and el.attrib.get("class") == "class-label"]
        assert labels == ["Σ", "+↑", "+↓", "-↑", "-↓", "△", "▽"]

    def test_panel_can_be_disabled(self):
        root = svg_root(render_shift_graph(basic_result(), RenderOptions(show_class_totals=False)))
        labels = [el for el in root.iter()
                  if el.tag.endswith("text") and el.attrib.get("class") == "class-label"]
        assert labels == []


class TestInsets:
    def test_cumulative_marker_rank(self):
        root = svg_root(render_shift_graph(basic_result(), RenderOptions(top_n=2)))
        markers = [el.text for el in root.iter()
                   if el.tag.endswith("text") and el.attrib.get("class") == "inset-marker"]
        assert markers == ["rank 2"]

    def test_corpus_size_inset_lists_totals(self):
        root = svg_root(render_shift_graph(basic_result()))
        values = [el.text for el in root.iter()
                  if el.tag.endswith("text") and el.attrib.get("class") == "inset-value"]
        assert values == ["10", "10"]

    def test_signed_inset_requires_nonzero_total(self):
        d = TokenDistribution("d", {"a": 1, "b": 2})
        d2 = TokenDistribution("d2", {"a": 2, "b": 1})
        result = analyze(relative_frequency_components(d, d2))  # delta is exactly 0
        assert result.cumulative_signed is None
        with pytest.raises(ValueError, match="abs"):
            render_shift_graph(result, RenderOptions(cumulative_inset="signed"))

    def test_insets_can_be_disabled(self):
        options = RenderOptions(cumulative_inset=None, corpus_size_inset=False)
        root = svg_root(render_shift_graph(basic_result(), options))
        headings = [el for el in root.iter()
                    if el.tag.endswith("text") and el.attrib.get("class") == "inset-heading"]
        assert headings == []


class TestErrors:
    def test_all_zero_contributions_rejected(self):
        d = TokenDistribution("d", {"a": 1, "b": 2})
        result = analyze(relative_frequency_components(d, d))
        with pytest.raises(ValueError, match="nonzero"):
            render_shift_graph(result)

    def test_top_n_validated(self):
        with pytest.raises(ValueError):
            RenderOptions(top_n=0)

    def test_xml_special_characters_escaped(self):
        d1 = TokenDistribution("a<&b", {"x<y": 1, "a&b": 3})
        d2 = TokenDistribution("c>d", {"x<y": 3, "a&b": 1})
        document = render_shift_graph(analyze(relative_frequency_components(d1, d2)))
        root = svg_root(document)  # would raise on malformed XML
        assert any(el.text and "x<y" in el.text for el in root.iter() if el.tag.endswith("text"))
