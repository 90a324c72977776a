"""Command line surface: single-step commands and a declarative pipeline.

A pipeline config is a line-oriented text file. Assignments before the
first section name the inputs; each ``[kind]`` section appends one step,
executed in file order. Two image slots, ``a`` and ``b``, flow through
the steps; unary steps pick their slot with ``apply_to``.

Exit codes: 0 success, 2 flag/config validation failure, 3 processing
failure (named step), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .compare import (
    align_by_landmarks,
    asymmetry_map,
    blend,
    eye_size_ratio,
    feature_vector,
    landmark_similarity,
    read_landmarks,
    reflect_landmarks,
    side_by_side,
    swap_side_labels,
    transform_landmarks,
)
from .errors import MissingMeasurement, PalimpsestError, ParseError, UnsupportedFormat
from .geometry import (
    PortraitKind,
    SimilarityTransform,
    absolute_to_centered,
    apply_transform,
    mirror_policy,
    reflect_h,
    resample_onto,
)
from .multiscale import FilterSpec, atrous_decompose, detail_plane_raster, wavelet_filter
from .raster import Raster, read_image, to_grayscale, write_image
from .restore import InkPolarity, RestoreParams, restore

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STEP = 3
EXIT_IO = 4

_SLOTS = ("a", "b")
_STEP_KINDS = (
    "restore",
    "wavelet",
    "grayscale",
    "transform",
    "blend",
    "side_by_side",
    "feature_compare",
    "asymmetry",
)
_TOP_KEYS = (
    "input", "input_b", "output", "output_b",
    "landmarks", "landmarks_b", "kind", "kind_b", "report",
)


class ConfigError(Exception):
    """Config file failed validation; the message carries line and field."""


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))  # plain repr even for numpy scalars
    return str(value)


# ---------------------------------------------------------------------------
# Config parsing and validation
# ---------------------------------------------------------------------------

@dataclass
class Step:
    kind: str
    line: int
    params: dict


@dataclass
class PipelineConfig:
    source: str
    inputs: dict = field(default_factory=dict)       # slot -> Path
    outputs: dict = field(default_factory=dict)      # slot -> Path
    landmark_paths: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)        # slot -> PortraitKind
    report: Path | None = None
    steps: list = field(default_factory=list)


def _strip_comment(line: str) -> str:
    for i, ch in enumerate(line):
        if ch == "#" and (i == 0 or line[i - 1] in " \t"):
            return line[:i]
    return line


def parse_pipeline_config(text: str, source: str = "config") -> PipelineConfig:
    """Parse and fully validate a pipeline config before any pixel work."""
    cfg = PipelineConfig(source=source)
    top: dict = {}
    current: Step | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"{source}:{lineno}: unterminated section header {raw.strip()!r}")
            kind = line[1:-1].strip()
            if kind not in _STEP_KINDS:
                raise ConfigError(f"{source}:{lineno}: unknown step kind [{kind}]")
            current = Step(kind, lineno, {})
            cfg.steps.append(current)
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if current is None:
            if key not in _TOP_KEYS:
                raise ConfigError(f"{source}:{lineno}: unknown setting {key!r}")
            if key in top:
                raise ConfigError(f"{source}:{lineno}: duplicate setting {key!r}")
            top[key] = (value, lineno)
        else:
            if key in current.params:
                raise ConfigError(f"{source}:{lineno}: duplicate parameter {key!r}")
            current.params[key] = (value, lineno)

    _validate_top(cfg, top)
    for index, step in enumerate(cfg.steps, 1):
        step.params = _validate_step(cfg, index, step)
    return cfg


def _validate_top(cfg: PipelineConfig, top: dict) -> None:
    src = cfg.source
    if "input" not in top:
        raise ConfigError(f"{src}: missing required setting 'input'")
    if "output" not in top:
        raise ConfigError(f"{src}: missing required setting 'output'")
    cfg.inputs["a"] = Path(top["input"][0])
    cfg.outputs["a"] = Path(top["output"][0])
    if "input_b" in top:
        cfg.inputs["b"] = Path(top["input_b"][0])
    if "output_b" in top:
        if "b" not in cfg.inputs:
            _, line = top["output_b"]
            raise ConfigError(f"{src}:{line}: output_b given but there is no input_b")
        cfg.outputs["b"] = Path(top["output_b"][0])
    if "landmarks" in top:
        cfg.landmark_paths["a"] = Path(top["landmarks"][0])
    if "landmarks_b" in top:
        cfg.landmark_paths["b"] = Path(top["landmarks_b"][0])
    for key, slot in (("kind", "a"), ("kind_b", "b")):
        if key in top:
            value, line = top[key]
            try:
                cfg.kinds[slot] = PortraitKind(value)
            except ValueError:
                raise ConfigError(
                    f"{src}:{line}: {key}: expected self_portrait or portrait, got {value!r}"
                ) from None
    if "report" in top:
        cfg.report = Path(top["report"][0])


class _ParamReader:
    """Typed access to one step's raw parameters with field diagnostics."""

    def __init__(self, cfg: PipelineConfig, step: Step):
        self.cfg = cfg
        self.step = step
        self.seen: set = set()

    def _fail(self, key: str, message: str):
        line = self.step.params.get(key, (None, self.step.line))[1]
        raise ConfigError(f"{self.cfg.source}:{line}: [{self.step.kind}] {key}: {message}")

    def _raw(self, key: str, default):
        self.seen.add(key)
        if key in self.step.params:
            return self.step.params[key][0]
        return default

    def string(self, key: str, default=None, choices=None):
        value = self._raw(key, default)
        if value is not None and choices is not None and value not in choices:
            self._fail(key, f"expected one of {', '.join(choices)}, got {value!r}")
        return value

    def boolean(self, key: str, default: bool) -> bool:
        value = self._raw(key, None)
        if value is None:
            return default
        if value.lower() in ("true", "yes", "1"):
            return True
        if value.lower() in ("false", "no", "0"):
            return False
        self._fail(key, f"expected true/false, got {value!r}")

    def number(self, key: str, default, kind=float):
        value = self._raw(key, None)
        if value is None:
            if default is None:
                self._fail(key, "required parameter is missing")
            return default
        try:
            return kind(value)
        except ValueError:
            self._fail(key, f"expected {kind.__name__}, got {value!r}")

    def number_list(self, key: str, default):
        value = self._raw(key, None)
        if value is None:
            return default
        try:
            return tuple(float(part) for part in value.split(","))
        except ValueError:
            self._fail(key, f"expected comma-separated numbers, got {value!r}")

    def slot(self, key: str, default: str, allow_both: bool = False):
        choices = ("a", "b", "both") if allow_both else ("a", "b")
        value = self.string(key, default, choices=choices)
        slots = ("a", "b") if value == "both" else (value,)
        for s in slots:
            if s not in self.cfg.inputs:
                self._fail(key, f"slot '{s}' has no input")
        return value

    def finish(self):
        for key, (_, line) in self.step.params.items():
            if key not in self.seen:
                raise ConfigError(
                    f"{self.cfg.source}:{line}: [{self.step.kind}] unknown parameter {key!r}"
                )


def _require_landmarks(reader: _ParamReader, key: str, slot: str) -> None:
    if slot not in reader.cfg.landmark_paths:
        reader._fail(key, f"slot '{slot}' has no landmarks file")


def _validate_step(cfg: PipelineConfig, index: int, step: Step) -> dict:
    r = _ParamReader(cfg, step)
    kind = step.kind
    out: dict = {}
    if kind == "grayscale":
        out["apply_to"] = r.slot("apply_to", "a", allow_both=True)
    elif kind == "restore":
        out["apply_to"] = r.slot("apply_to", "a", allow_both=True)
        threshold = r.number("threshold", None)
        polarity = r.string("polarity", "darker", choices=("darker", "lighter"))
        neighborhood = r.number("neighborhood", 8, kind=int)
        max_passes = r.number("max_passes", 1024, kind=int)
        try:
            out["params"] = RestoreParams(threshold, InkPolarity(polarity), max_passes, neighborhood)
        except ValueError as exc:
            r._fail("threshold", str(exc))
    elif kind == "wavelet":
        out["apply_to"] = r.slot("apply_to", "a", allow_both=True)
        levels = r.number("levels", 4, kind=int)
        if levels < 1:
            r._fail("levels", "must be >= 1")
        gains = r.number_list("gains", (1.0,) * levels)
        thresholds = r.number_list("thresholds", (0.0,) * levels)
        out["levels"] = levels
        out["boundary"] = r.string("boundary", "mirror", choices=("mirror", "periodic"))
        try:
            out["spec"] = FilterSpec(gains, thresholds)
        except PalimpsestError as exc:
            r._fail("gains", str(exc))
        if len(out["spec"].gains) != levels:
            r._fail("gains", f"expected {levels} values, got {len(out['spec'].gains)}")
    elif kind == "transform":
        slot = r.slot("apply_to", "a")
        out["apply_to"] = slot
        out["reflect"] = r.boolean("reflect", False)
        out["scale"] = r.number("scale", 1.0)
        out["rotation"] = r.number("rotation_deg", 0.0)
        out["dx"] = r.number("dx", 0.0)
        out["dy"] = r.number("dy", 0.0)
        out["fill"] = r.number("fill", 1.0)
        out["use_mirror_policy"] = r.boolean("use_mirror_policy", False)
        align_to = r.string("align_to", None, choices=("a", "b"))
        out["align_to"] = align_to
        if out["scale"] <= 0:
            r._fail("scale", "must be positive")
        if not 0.0 <= out["fill"] <= 1.0:
            r._fail("fill", "must lie in [0, 1]")
        other = "b" if slot == "a" else "a"
        if out["use_mirror_policy"]:
            for s in (slot, other):
                if s not in cfg.kinds:
                    r._fail("use_mirror_policy", f"slot '{s}' has no portrait kind")
        if align_to is not None:
            if align_to == slot:
                r._fail("align_to", "cannot align a slot to itself")
            if align_to not in cfg.inputs:
                r._fail("align_to", f"slot '{align_to}' has no input")
            _require_landmarks(r, "align_to", slot)
            _require_landmarks(r, "align_to", align_to)
    elif kind == "blend":
        slot = r.slot("apply_to", "a")
        overlay = r.slot("overlay", "b" if slot == "a" else "a")
        if overlay == slot:
            r._fail("overlay", "overlay must name the other slot")
        out["apply_to"] = slot
        out["overlay"] = overlay
        out["alpha"] = r.number("alpha", 0.5)
        out["mode"] = r.string("mode", "normal", choices=("normal", "multiply"))
        out["reflect"] = r.boolean("reflect", False)
        out["scale"] = r.number("scale", 1.0)
        out["rotation"] = r.number("rotation_deg", 0.0)
        out["dx"] = r.number("dx", 0.0)
        out["dy"] = r.number("dy", 0.0)
        if not 0.0 <= out["alpha"] <= 1.0:
            r._fail("alpha", "must lie in [0, 1]")
        if out["scale"] <= 0:
            r._fail("scale", "must be positive")
    elif kind == "side_by_side":
        left = r.slot("left", "a")
        right = r.slot("right", "b" if left == "a" else "a")
        out["left"] = left
        out["right"] = right
        out["into"] = r.slot("into", left)
        out["gutter"] = r.number("gutter", 0, kind=int)
        out["gutter_value"] = r.number("gutter_value", 1.0)
        if out["gutter"] < 0:
            r._fail("gutter", "must be >= 0")
        if not 0.0 <= out["gutter_value"] <= 1.0:
            r._fail("gutter_value", "must lie in [0, 1]")
    elif kind == "feature_compare":
        _require_landmarks(r, "landmarks", "a")
        _require_landmarks(r, "landmarks", "b")
    elif kind == "asymmetry":
        out["apply_to"] = r.slot("apply_to", "a")
        out["axis_x"] = r.number("axis_x", None, kind=int)
        if out["axis_x"] < 0:
            r._fail("axis_x", "must be >= 0")
    r.finish()
    return out


# ---------------------------------------------------------------------------
# Pipeline execution
# ---------------------------------------------------------------------------

@dataclass
class _Slot:
    image: Raster
    landmarks: object = None
    kind: PortraitKind | None = None


def _slots_for(value: str) -> tuple:
    return ("a", "b") if value == "both" else (value,)


def run_pipeline(cfg: PipelineConfig, *, report_override: Path | None = None,
                 stdout=None, stderr=None) -> int:
    """Execute a validated config; write outputs and the machine report."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    slots: dict = {}
    try:
        for slot, path in cfg.inputs.items():
            state = _Slot(read_image(path))
            if slot in cfg.landmark_paths:
                state.landmarks = read_landmarks(cfg.landmark_paths[slot])
            state.kind = cfg.kinds.get(slot)
            slots[slot] = state
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    except (ParseError, UnsupportedFormat) as exc:
        print(f"error: unreadable input: {exc}", file=stderr)
        return EXIT_IO

    report: list = [f"config.steps={len(cfg.steps)}"]
    for slot in _SLOTS:
        if slot in cfg.inputs:
            report.append(f"config.input_{slot}={cfg.inputs[slot]}")

    for index, step in enumerate(cfg.steps, 1):
        try:
            _run_step(index, step, slots, report, stderr)
        except (PalimpsestError, ValueError) as exc:
            print(f"error: step {index} [{step.kind}]: {exc}", file=stderr)
            return EXIT_STEP
        print(f"step {index} [{step.kind}] done", file=stdout)

    report.append("summary.status=ok")
    report.append(f"summary.steps={len(cfg.steps)}")
    try:
        for slot, path in cfg.outputs.items():
            write_image(path, slots[slot].image)
            report.append(f"summary.output_{slot}={path}")
        report_path = report_override or cfg.report
        if report_path is None:
            out_a = cfg.outputs["a"]
            report_path = out_a.with_name(out_a.name + ".report.txt")
        Path(report_path).write_text("\n".join(report) + "\n")
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    print(f"wrote {cfg.outputs['a']}", file=stdout)
    print(f"report {report_path}", file=stdout)
    return EXIT_OK


def _run_step(index: int, step: Step, slots: dict, report: list, stderr) -> None:
    p = step.params
    key = f"step{index}"
    report.append(f"{key}.kind={step.kind}")

    if step.kind == "grayscale":
        for s in _slots_for(p["apply_to"]):
            slots[s].image = to_grayscale(slots[s].image)

    elif step.kind == "restore":
        for s in _slots_for(p["apply_to"]):
            result = restore(slots[s].image, p["params"])
            slots[s].image = result.image
            stderr.write(result.diagnostics_text())
            report.append(f"{key}.{s}.masked_before={result.masked_before}")
            report.append(f"{key}.{s}.masked_after={result.masked_after}")
            report.append(f"{key}.{s}.passes_used={result.passes_used}")

    elif step.kind == "wavelet":
        for s in _slots_for(p["apply_to"]):
            slots[s].image = wavelet_filter(
                slots[s].image, p["levels"], p["spec"], boundary=p["boundary"]
            )
            report.append(f"{key}.{s}.levels={p['levels']}")

    elif step.kind == "transform":
        _run_transform(key, p, slots, report)

    elif step.kind == "blend":
        base = slots[p["apply_to"]]
        over = slots[p["overlay"]]
        t = SimilarityTransform(
            p["reflect"], p["scale"], p["rotation"], (p["dx"], p["dy"])
        )
        base.image = blend(base.image, over.image, t, p["alpha"], p["mode"])
        report.append(f"{key}.alpha={_fmt(p['alpha'])}")
        report.append(f"{key}.mode={p['mode']}")

    elif step.kind == "side_by_side":
        left = slots[p["left"]].image
        right = slots[p["right"]].image
        slots[p["into"]].image = side_by_side(left, right, p["gutter"], p["gutter_value"])
        report.append(f"{key}.width={slots[p['into']].image.width}")

    elif step.kind == "feature_compare":
        va = feature_vector(slots["a"].landmarks)
        vb = feature_vector(slots["b"].landmarks)
        score = landmark_similarity(va, vb)
        report.append(f"{key}.vector_a=" + ",".join(_fmt(v) for v in va))
        report.append(f"{key}.vector_b=" + ",".join(_fmt(v) for v in vb))
        report.append(f"{key}.similarity={_fmt(score)}")
        for s in ("a", "b"):
            try:
                ratio = eye_size_ratio(slots[s].landmarks)
            except MissingMeasurement:
                continue
            report.append(f"{key}.eye_ratio_{s}={_fmt(ratio)}")

    elif step.kind == "asymmetry":
        s = p["apply_to"]
        img = slots[s].image
        if not img.is_gray:
            raise ValueError("asymmetry step needs a grayscale image; run [grayscale] first")
        slots[s].image = asymmetry_map(img, p["axis_x"])
        report.append(f"{key}.axis_x={p['axis_x']}")


def _run_transform(key: str, p: dict, slots: dict, report: list) -> None:
    slot = p["apply_to"]
    state = slots[slot]
    other = "b" if slot == "a" else "a"

    do_reflect = p["reflect"]
    if p["use_mirror_policy"]:
        do_reflect = mirror_policy(state.kind, slots[other].kind)
        report.append(f"{key}.mirror_policy={_fmt(do_reflect)}")

    if p["align_to"] is not None:
        # Reflect exactly first (never through the resampler), then fit the
        # remaining similarity on the landmark correspondences.
        if do_reflect:
            state.landmarks = reflect_landmarks(state.landmarks, state.image.width)
            state.image = reflect_h(state.image)
            report.append(f"{key}.reflected=true")
        target = slots[p["align_to"]]
        alignment = align_by_landmarks(state.landmarks, target.landmarks, allow_reflection=False)
        t = alignment.transform
        # Resample straight into the target frame so source content outside
        # the target's extent can still be pulled into view.
        out_w, out_h = target.image.width, target.image.height
        center = ((out_w - 1) / 2.0, (out_h - 1) / 2.0)
        values, covered = resample_onto(state.image, absolute_to_centered(t, center), out_w, out_h)
        if state.image.channels == 3:
            covered = covered[..., None]
        state.image = Raster(np.clip(np.where(covered, values, p["fill"]), 0.0, 1.0))
        state.landmarks = transform_landmarks(state.landmarks, t)
        report.append(f"{key}.align_scale={_fmt(t.scale)}")
        report.append(f"{key}.align_rotation_deg={_fmt(t.rotation)}")
        report.append(f"{key}.align_residual_rms={_fmt(alignment.residual_rms)}")
        return

    t = SimilarityTransform(do_reflect, p["scale"], p["rotation"], (p["dx"], p["dy"]))
    if t.is_identity:
        return
    center = ((state.image.width - 1) / 2.0, (state.image.height - 1) / 2.0)
    state.image = apply_transform(state.image, t, p["fill"])
    if state.landmarks is not None:
        state.landmarks = transform_landmarks(state.landmarks, t, center=center)
        if do_reflect:
            state.landmarks = swap_side_labels(state.landmarks)
    if do_reflect:
        report.append(f"{key}.reflected=true")


# ---------------------------------------------------------------------------
# Single-step commands
# ---------------------------------------------------------------------------

def _cmd_run(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = parse_pipeline_config(text, source=str(args.config))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = Path(args.report) if args.report else None
    return run_pipeline(cfg, report_override=report)


def _cmd_restore(args) -> int:
    img = read_image(args.input)
    params = RestoreParams(args.threshold, InkPolarity(args.polarity),
                           args.max_passes, args.neighborhood)
    result = restore(img, params)
    sys.stderr.write(result.diagnostics_text())
    write_image(args.output, result.image)
    return EXIT_OK


def _cmd_wavelet(args) -> int:
    img = read_image(args.input)
    levels = args.levels
    gains = tuple(float(v) for v in args.gains.split(",")) if args.gains else (1.0,) * levels
    thresholds = (
        tuple(float(v) for v in args.thresholds.split(",")) if args.thresholds else (0.0,) * levels
    )
    spec = FilterSpec(gains, thresholds)
    if args.dump:
        stack = atrous_decompose(img, levels, boundary=args.boundary)
        for j, plane in enumerate(stack.details, 1):
            write_image(f"{args.dump}.d{j}.pgm", detail_plane_raster(plane))
        write_image(f"{args.dump}.residual.pgm", Raster(stack.residual.clip(0.0, 1.0)))
    write_image(args.output, wavelet_filter(img, levels, spec, boundary=args.boundary))
    return EXIT_OK


def _transform_from_args(args) -> SimilarityTransform:
    return SimilarityTransform(args.reflect, args.scale, args.rotation, (args.dx, args.dy))


def _cmd_transform(args) -> int:
    img = read_image(args.input)
    write_image(args.output, apply_transform(img, _transform_from_args(args), args.fill))
    return EXIT_OK


def _cmd_blend(args) -> int:
    base = read_image(args.base)
    overlay = read_image(args.overlay)
    out = blend(base, overlay, _transform_from_args(args), args.alpha, args.mode)
    write_image(args.output, out)
    return EXIT_OK


def _cmd_sbs(args) -> int:
    a = read_image(args.left)
    b = read_image(args.right)
    write_image(args.output, side_by_side(a, b, args.gutter, args.gutter_value))
    return EXIT_OK


def _cmd_compare(args) -> int:
    va = feature_vector(read_landmarks(args.a))
    vb = feature_vector(read_landmarks(args.b))
    print("vector_a=" + ",".join(_fmt(v) for v in va))
    print("vector_b=" + ",".join(_fmt(v) for v in vb))
    print(f"similarity={_fmt(landmark_similarity(va, vb))}")
    return EXIT_OK


def _cmd_asym(args) -> int:
    img = read_image(args.input)
    if not img.is_gray:
        img = to_grayscale(img)
    write_image(args.output, asymmetry_map(img, args.axis_x))
    return EXIT_OK


def _add_transform_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--reflect", action="store_true", help="flip about the vertical center axis")
    p.add_argument("--scale", type=float, default=1.0, help="uniform scale (default 1)")
    p.add_argument("--rotation", type=float, default=0.0, help="degrees counterclockwise (default 0)")
    p.add_argument("--dx", type=float, default=0.0, help="x translation in pixels (default 0)")
    p.add_argument("--dy", type=float, default=0.0, help="y translation in pixels (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palimpsest",
        description="Restore overwritten drawings and compare portrait geometry.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a pipeline config file")
    p.add_argument("config")
    p.add_argument("--report", help="write the machine report here instead of next to the output")
    p.add_argument("--seed", type=int, default=0,
                   help="reserved; no step is stochastic, the value is ignored")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("restore", help="remove ink strokes by threshold mask and neighbor fill")
    p.add_argument("--threshold", type=float, default=0.2, help="mask cutoff intensity (default 0.2)")
    p.add_argument("--polarity", choices=("darker", "lighter"), default="darker",
                   help="side of the threshold that counts as ink (default darker)")
    p.add_argument("--neighborhood", type=int, choices=(4, 8), default=8,
                   help="fill connectivity (default 8)")
    p.add_argument("--max-passes", type=int, default=1024, dest="max_passes")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_restore)

    p = sub.add_parser("wavelet", help="multiscale detail filtering")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--gains", help="comma-separated per-level gains (default all 1)")
    p.add_argument("--thresholds", help="comma-separated per-level soft thresholds (default all 0)")
    p.add_argument("--boundary", choices=("mirror", "periodic"), default="mirror")
    p.add_argument("--dump", metavar="PREFIX",
                   help="also write offset-encoded detail planes as PREFIX.dN.pgm")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_wavelet)

    p = sub.add_parser("transform", help="reflect/scale/rotate/translate an image")
    _add_transform_flags(p)
    p.add_argument("--fill", type=float, default=1.0, help="value for uncovered pixels (default 1)")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("blend", help="composite a transformed overlay onto a base image")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--mode", choices=("normal", "multiply"), default="normal")
    _add_transform_flags(p)
    p.add_argument("base")
    p.add_argument("overlay")
    p.add_argument("output")
    p.set_defaults(func=_cmd_blend)

    p = sub.add_parser("sbs", help="place two images side by side")
    p.add_argument("--gutter", type=int, default=0)
    p.add_argument("--gutter-value", type=float, default=1.0, dest="gutter_value")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("output")
    p.set_defaults(func=_cmd_sbs)

    p = sub.add_parser("compare", help="print feature vectors and similarity of two landmark files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("asym", help="bilateral asymmetry map about a pixel column")
    p.add_argument("--axis-x", type=int, required=True, dest="axis_x")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_asym)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (PalimpsestError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STEP


if __name__ == "__main__":
    sys.exit(main())
