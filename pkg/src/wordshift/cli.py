"""Command-line entry point wiring ingestion, measures, decomposition, and rendering.

Exit codes: 0 on success, 2 for configuration or parse problems, 3 for
mathematical domain errors (undefined divergence, emptied vocabulary), so
scripts can tell user error from measure error.

Runs are driven by flags, by a flat ``key = value`` config file, or both;
flags win. Every command is deterministic: identical inputs and options
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from . import __version__
from .corpus import TokenDistribution, TokenizerOptions, load_counts, load_text
from .errors import DomainError, ParseError
from .lexicon import StopLens, load_lexicon
from .measures import CORPUS1_AVERAGE, MEASURE_KINDS, MeasureSpec, build_components
from .render import RenderOptions, render_shift_graph
from .shift import ShiftResult, analyze


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one run."""

    corpus1: str | None = None
    corpus2: str | None = None
    label1: str | None = None
    label2: str | None = None
    measure: str | None = None
    alpha: float | None = None
    log_base: float = 2.0
    pi1: float | None = None
    pi2: float | None = None
    pi_proportional: bool = False
    lexicon: str | None = None
    lexicon2: str | None = None
    center: float = 5.0
    center2: float | None = None
    scale_min: float | None = None
    scale_max: float | None = None
    stop_lens: tuple[float, float] | None = None
    ref: str | None = None
    missing_scores: str = "borrow"
    top_n: int = 50
    cumulative: str = "abs"
    exclude: tuple[str, ...] = ()
    lowercase: bool = True
    strip_punctuation: bool = True
    ngram_size: int = 1
    width: int = 900
    height: int | None = None
    out_json: str | None = None
    out_tsv: str | None = None
    out_svg: str | None = None
    from_json: str | None = None


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ParseError(f"config key {key!r}: expected a boolean, got {value!r}")


def _parse_log_base(value: str) -> float:
    if value.strip().lower() == "e":
        return math.e
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"log base must be a number or 'e', got {value!r}") from None


def _split_words(value: str) -> tuple[str, ...]:
    return tuple(word for word in (part.strip() for part in value.split(",")) if word)


def load_config_file(path: str) -> dict[str, object]:
    """Parse a flat ``key = value`` config file into typed entries.

    Keys mirror the CLI flags one-to-one (dashes become underscores).
    """
    known = set(RunConfig.__dataclass_fields__) | {"pi"}
    entries: dict[str, object] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", path=path, line=lineno)
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in known:
            raise ParseError(f"unknown config key {key!r}", path=path, line=lineno)
        try:
            entries[key] = _convert_config_value(key, value)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), path=path, line=lineno) from exc
    return entries


def _convert_config_value(key: str, value: str) -> object:
    if key in ("alpha", "pi1", "pi2", "center", "center2", "scale_min", "scale_max"):
        return float(value)
    if key == "log_base":
        return _parse_log_base(value)
    if key in ("top_n", "ngram_size", "width", "height"):
        return int(value)
    if key in ("lowercase", "strip_punctuation"):
        return _parse_bool(value, key)
    if key == "pi_proportional":
        return _parse_bool(value, key)
    if key == "pi":
        if value != "proportional":
            raise ValueError(f"config key 'pi' only accepts 'proportional', got {value!r}")
        return value
    if key == "stop_lens":
        parts = value.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"stop_lens needs two bounds, got {value!r}")
        return (float(parts[0]), float(parts[1]))
    if key == "exclude":
        return _split_words(value)
    if key == "measure":
        if value not in MEASURE_KINDS:
            raise ValueError(f"unknown measure {value!r}")
        return value
    if key in ("missing_scores", "cumulative"):
        allowed = ("borrow", "drop") if key == "missing_scores" else ("abs", "signed")
        if value not in allowed:
            raise ValueError(f"config key {key!r} must be one of {', '.join(allowed)}")
        return value
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordshift",
        description="Compare two corpora with a weighted-average measure, decompose the "
        "difference into per-word contributions, and draw the shift graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = (
        ("compute", "compute the shift and write JSON/TSV results"),
        ("plot", "render an SVG shift graph (from corpora or a saved JSON result)"),
        ("exclude", "recompute with words removed and report the change"),
    )
    for name, help_text in specs:
        p = sub.add_parser(name, help=help_text)
        _add_run_arguments(p)
        if name == "plot":
            p.add_argument("--from-json", help="render from a previously computed JSON result")
    return parser


def _add_run_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("corpus1", nargs="?", help="first corpus, as 'text:PATH' or 'counts:PATH' (bare paths are text)")
    p.add_argument("corpus2", nargs="?", help="second corpus")
    p.add_argument("--config", help="flat key = value config file; flags override")
    p.add_argument("--label1", help="display label for corpus 1 (default: file stem)")
    p.add_argument("--label2", help="display label for corpus 2")
    p.add_argument("--measure", choices=MEASURE_KINDS)
    p.add_argument("--alpha", type=float, help="order of the generalized entropy / JSD")
    p.add_argument("--log-base", help="logarithm base (number or 'e'; default 2)")
    p.add_argument("--pi1", type=float, help="JSD mixture weight for corpus 1")
    p.add_argument("--pi2", type=float, help="JSD mixture weight for corpus 2")
    p.add_argument("--pi", choices=["proportional"],
                   help="set JSD mixture weights from the corpora's token-count shares")
    p.add_argument("--lexicon", help="word<TAB>score file for the dictionary measure")
    p.add_argument("--lexicon2", help="second lexicon scoring corpus 2 (default: --lexicon)")
    p.add_argument("--center", type=float, help="scale center of the lexicon (default 5)")
    p.add_argument("--center2", type=float, help="scale center of the second lexicon")
    p.add_argument("--scale-min", type=float, help="declared lower score bound (default: observed minimum)")
    p.add_argument("--scale-max", type=float, help="declared upper score bound (default: observed maximum)")
    p.add_argument("--stop-lens", nargs=2, type=float, metavar=("LOW", "HIGH"),
                   help="drop lexicon words scoring inside [LOW, HIGH]")
    p.add_argument("--ref", help="reference score: a number, or entropy1|center|zero")
    p.add_argument("--missing-scores", choices=["borrow", "drop"],
                   help="policy for words scored by only one lexicon (default borrow)")
    p.add_argument("--top-n", type=int, help="words shown in the graph (default 50)")
    p.add_argument("--cumulative", choices=["abs", "signed"],
                   help="cumulative inset mode (default abs)")
    p.add_argument("--exclude", help="comma-separated words to remove before normalization")
    p.add_argument("--no-lowercase", action="store_const", const=False, dest="lowercase")
    p.add_argument("--keep-punctuation", action="store_const", const=False, dest="strip_punctuation")
    p.add_argument("--ngram", type=int, dest="ngram_size", help="n-gram size (default 1)")
    p.add_argument("--width", type=int, help="SVG width in pixels")
    p.add_argument("--height", type=int, help="SVG height in pixels (default: fits content)")
    p.add_argument("--out-json")
    p.add_argument("--out-tsv")
    p.add_argument("--out-svg")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge config-file entries and CLI flags into a validated RunConfig."""
    values = load_config_file(args.config) if args.config else {}
    if getattr(args, "log_base", None) is not None:
        values["log_base"] = _parse_log_base(args.log_base)
    if getattr(args, "exclude", None) is not None:
        values["exclude"] = _split_words(args.exclude)
    if getattr(args, "stop_lens", None) is not None:
        values["stop_lens"] = (args.stop_lens[0], args.stop_lens[1])
    config_pi = values.pop("pi", None)
    if getattr(args, "pi", None) == "proportional" or config_pi == "proportional":
        values["pi_proportional"] = True
    direct = (
        "corpus1", "corpus2", "label1", "label2", "measure", "alpha", "pi1", "pi2",
        "lexicon", "lexicon2", "center", "center2", "scale_min", "scale_max", "ref",
        "missing_scores", "top_n", "cumulative", "lowercase", "strip_punctuation",
        "ngram_size", "width", "height", "out_json", "out_tsv", "out_svg", "from_json",
    )
    for key in direct:
        value = getattr(args, key, None)
        if value is not None:
            values[key] = value
    try:
        config = RunConfig(**values)
    except TypeError as exc:
        raise ParseError(str(exc)) from exc
    plotting_saved_result = args.command == "plot" and config.from_json is not None
    if not plotting_saved_result:
        if config.corpus1 is None or config.corpus2 is None:
            raise ParseError("two corpora are required (positional arguments or config keys corpus1/corpus2)")
        if config.measure is None:
            raise ParseError("--measure is required")
    return config


def _corpus_source(spec: str) -> tuple[str, str]:
    if spec.startswith("text:"):
        return "text", spec[len("text:"):]
    if spec.startswith("counts:"):
        return "counts", spec[len("counts:"):]
    return "text", spec


def _load_corpus(spec: str, label: str | None, options: TokenizerOptions) -> TokenDistribution:
    kind, path = _corpus_source(spec)
    if kind == "counts":
        return load_counts(path, label)
    return load_text(path, label, options)


def _resolve_reference(config: RunConfig):
    if config.ref is None:
        return None
    rule = config.ref.strip()
    if rule == "zero":
        return 0.0
    if rule == "entropy1":
        return CORPUS1_AVERAGE
    if rule == "center":
        if config.measure != "dictionary":
            raise ParseError("--ref center requires the dictionary measure")
        return None  # the dictionary default is the lexicon center
    try:
        return float(rule)
    except ValueError:
        raise ParseError(f"--ref must be a number or entropy1|center|zero, got {rule!r}") from None


def _measure_spec(config: RunConfig) -> MeasureSpec:
    lexicon1 = lexicon2 = None
    if config.measure == "dictionary":
        if config.lexicon is None:
            raise ParseError("the dictionary measure requires --lexicon")
        bounds = {"scale_min": config.scale_min, "scale_max": config.scale_max}
        lexicon1 = load_lexicon(config.lexicon, center=config.center, **bounds)
        if config.lexicon2 is not None:
            center2 = config.center2 if config.center2 is not None else config.center
            lexicon2 = load_lexicon(config.lexicon2, center=center2, **bounds)
    stop_lens = StopLens(*config.stop_lens) if config.stop_lens is not None else None
    return MeasureSpec(
        kind=config.measure,
        alpha=config.alpha,
        log_base=config.log_base,
        pi1=config.pi1,
        pi2=config.pi2,
        proportional_weights=config.pi_proportional,
        lexicon1=lexicon1,
        lexicon2=lexicon2,
        stop_lens=stop_lens,
        missing_scores=config.missing_scores,
        reference=_resolve_reference(config),
    )


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _provenance(config: RunConfig) -> dict:
    inputs = []
    for source in (config.corpus1, config.corpus2):
        kind, path = _corpus_source(source)
        inputs.append({"path": path, "kind": kind, "sha256": _sha256(path)})
    for path in (config.lexicon, config.lexicon2):
        if path is not None:
            inputs.append({"path": path, "kind": "lexicon", "sha256": _sha256(path)})
    echo = {key: list(value) if isinstance(value, tuple) else value
            for key, value in asdict(config).items()}
    return {"tool": "wordshift", "version": __version__, "inputs": inputs, "config": echo}


def build_result(config: RunConfig) -> tuple[ShiftResult, dict]:
    """Shared pipeline: load corpora, apply exclusions, evaluate, decompose."""
    options = TokenizerOptions(
        lowercase=config.lowercase,
        strip_punctuation=config.strip_punctuation,
        ngram_size=config.ngram_size,
    )
    d1 = _load_corpus(config.corpus1, config.label1, options)
    d2 = _load_corpus(config.corpus2, config.label2, options)
    if config.exclude:
        for word in config.exclude:
            if word not in d1.counts and word not in d2.counts:
                print(f"warning: excluded word {word!r} appears in neither corpus", file=sys.stderr)
        d1 = d1.without(config.exclude)
        d2 = d2.without(config.exclude)
    components = build_components(_measure_spec(config), d1, d2)
    return analyze(components), _provenance(config)


def _write_outputs(result: ShiftResult, meta: dict, config: RunConfig) -> None:
    if config.out_json:
        text = json.dumps(result.to_document(meta), ensure_ascii=False, indent=2, sort_keys=True)
        Path(config.out_json).write_text(text + "\n", encoding="utf-8")
    if config.out_tsv:
        Path(config.out_tsv).write_text(result.to_tsv(), encoding="utf-8")


def _render_options(config: RunConfig) -> RenderOptions:
    return RenderOptions(
        top_n=config.top_n,
        width=config.width,
        height=config.height,
        cumulative_inset=config.cumulative,
    )


def cmd_compute(config: RunConfig) -> None:
    result, meta = build_result(config)
    _write_outputs(result, meta, config)
    print(
        f"delta_phi = {result.delta_phi!r} (phi1 = {result.phi1_total!r}, "
        f"phi2 = {result.phi2_total!r}, words = {len(result.contributions)})"
    )


def cmd_plot(config: RunConfig) -> None:
    if config.out_svg is None:
        raise ParseError("plot requires --out-svg")
    if config.from_json is not None:
        try:
            doc = json.loads(Path(config.from_json).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON result: {exc}", path=config.from_json) from exc
        result = ShiftResult.from_document(doc)
    else:
        result, _ = build_result(config)
    graph = render_shift_graph(result, _render_options(config))
    graph.write(config.out_svg)
    print(f"wrote {config.out_svg}")


def cmd_exclude(config: RunConfig) -> None:
    if not config.exclude:
        raise ParseError("exclude requires --exclude with at least one word")
    baseline, _ = build_result(replace(config, exclude=()))
    result, meta = build_result(config)
    old, new = baseline.delta_phi, result.delta_phi
    if old != 0.0:
        change = f"{(new - old) / abs(old) * 100.0:+.1f}%"
    else:
        change = "baseline difference is zero"
    print(f"delta_phi: {old!r} -> {new!r} ({change})")
    _write_outputs(result, meta, config)
    if config.out_svg:
        render_shift_graph(result, _render_options(config)).write(config.out_svg)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    commands = {"compute": cmd_compute, "plot": cmd_plot, "exclude": cmd_exclude}
    try:
        config = resolve_config(args)
        commands[args.command](config)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
