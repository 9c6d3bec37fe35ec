"""Command-line entry points.

Subcommands:
    run          stream frames through the full pipeline, publish events
    annotate     remove or merge track ids in a track-log file
    features     compute per-frame feature lines from a track log
    classify     score feature windows with a weight file
    init-weights write a deterministic seeded weight file
    eval         score a prediction file against a truth file
    gen          render a synthetic scenario spec to a frame-stream file
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

import numpy as np

from .config import FEATURE_MODES, WINDOW_SECONDS, EngineConfig, load_config
from .errors import PoseGuardError, SchemaError
from .features import compute_features
from .metrics import evaluate, render_report, report_to_dict
from .network import model_forward
from .pipeline import Engine
from .scenarios import gen_scenario, load_scenario_spec
from .sinks import make_sink
from .streams import read_frames, read_lines, serialize_frame
from .tracking import (
    merge_tracks,
    read_track_log,
    remove_tracks,
    serialize_track_log_line,
)
from .types import LABELS, BBox
from .validation import check_labels
from .weights import init_test_weights, load_weights_file, save_weights


@contextmanager
def _out_stream(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _build_config(args) -> EngineConfig:
    config = load_config(args.config) if args.config else EngineConfig()
    overrides = {}
    if getattr(args, "fps", None) is not None:
        overrides["input_fps"] = args.fps
    if getattr(args, "window", None) is not None:
        overrides["window_len"] = WINDOW_SECONDS[args.window]
    if getattr(args, "features", None) is not None:
        overrides["feature_mode"] = args.features
    if getattr(args, "sink", None) is not None:
        overrides["sink"] = args.sink
    return config.with_overrides(**overrides).validate()


def cmd_run(args) -> int:
    config = _build_config(args)
    weights = load_weights_file(args.weights)
    with make_sink(config.sink) as sink:
        engine = Engine(config, weights, sink)
        for _ in engine.run(read_frames(args.input)):
            pass
    print(json.dumps(engine.stats), file=sys.stderr)
    return 0


def cmd_annotate(args) -> int:
    records = read_track_log(args.input)
    if args.remove_ids:
        ids = {int(v) for v in args.remove_ids.split(",") if v.strip()}
        records = remove_tracks(records, ids)
    for merge in args.merge or []:
        try:
            from_id, into_id = (int(v) for v in merge.split(":"))
        except ValueError:
            raise SchemaError(f"bad --merge {merge!r}; want FROM:INTO") from None
        records = merge_tracks(records, from_id, into_id)
    with _out_stream(args.out) as out:
        for record in records:
            out.write(serialize_track_log_line(record) + "\n")
    return 0


def cmd_features(args) -> int:
    config = _build_config(args)
    mode = config.feature_mode
    prev: dict[int, np.ndarray] = {}
    with _out_stream(args.out) as out:
        for frame_index, track_id, payload in read_track_log(args.input):
            if not isinstance(payload, dict) or "keypoints" not in payload or "bbox" not in payload:
                raise SchemaError(
                    f"track-log record at frame {frame_index} lacks keypoints/bbox"
                )
            kps = np.asarray(payload["keypoints"], dtype=np.float64)
            if kps.shape != (17, 3):
                raise SchemaError(f"expected 17 keypoints, got shape {kps.shape}")
            fv = compute_features(
                mode,
                kps,
                BBox(*(float(v) for v in payload["bbox"])),
                config.keypoint_conf_threshold,
                prev.get(track_id),
            )
            if fv.valid:
                prev[track_id] = fv.values
            out.write(
                json.dumps(
                    {
                        "frame_index": frame_index,
                        "track_id": track_id,
                        "mode": mode,
                        "valid": fv.valid,
                        "values": [float(v) for v in fv.values],
                    },
                    separators=(",", ":"),
                )
                + "\n"
            )
    return 0


def cmd_classify(args) -> int:
    weights = load_weights_file(args.weights)
    windows = []
    for line in read_lines(args.input):
        matrix = np.asarray(json.loads(line), dtype=np.float64)
        if matrix.ndim != 2:
            raise SchemaError(f"window line must be a 2-D matrix, got shape {matrix.shape}")
        windows.append(matrix)
    with _out_stream(args.out) as out:
        if windows:
            probs = model_forward(np.stack(windows), weights)
            for row in probs:
                doc = {"probs": dict(zip(LABELS, (float(p) for p in row)))}
                out.write(json.dumps(doc, separators=(",", ":")) + "\n")
    return 0


def cmd_init_weights(args) -> int:
    try:
        dims = tuple(int(v) for v in args.dims.split(","))
    except ValueError:
        raise SchemaError(f"bad --dims {args.dims!r}; want T,D,F,H") from None
    if len(dims) != 4:
        raise SchemaError(f"bad --dims {args.dims!r}; want T,D,F,H")
    weights = init_test_weights(args.seed, dims, kernel_size=args.kernel)
    with _out_stream(args.out) as out:
        out.write(save_weights(weights))
        out.write("\n")
    return 0


def _read_label_file(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def cmd_eval(args) -> int:
    predictions = _read_label_file(args.predictions)
    truths = _read_label_file(args.truths)
    check_labels(predictions)
    check_labels(truths)
    report = evaluate(predictions, truths)
    print(render_report(report))
    print(json.dumps(report_to_dict(report), indent=2))
    return 0


def cmd_gen(args) -> int:
    frames = gen_scenario(load_scenario_spec(args.spec))
    with _out_stream(args.out) as out:
        for frame in frames:
            out.write(serialize_frame(frame) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poseguard",
        description="Pose-stream violence detection: tracking, features, "
        "windowed CNN-BiLSTM classification, debounced alerts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="process a frame stream end to end")
    run.add_argument("--config", help="JSON config file (flags override it)")
    run.add_argument("--input", required=True, help="frame file, '-' for stdin, or tcp:HOST:PORT")
    run.add_argument("--weights", required=True, help="weight file")
    run.add_argument("--sink", help="stdout | file:PATH | tcp:HOST:PORT")
    run.add_argument("--fps", type=float, help="input frames/second")
    run.add_argument("--window", choices=sorted(WINDOW_SECONDS), help="window length")
    run.add_argument("--features", choices=FEATURE_MODES, help="feature mode")
    run.set_defaults(func=cmd_run)

    annotate = sub.add_parser("annotate", help="edit track ids in a track log")
    annotate.add_argument("--input", required=True, help="track-log file")
    annotate.add_argument("--out", default="-", help="output file ('-' = stdout)")
    annotate.add_argument("--remove-ids", help="comma-separated track ids to drop")
    annotate.add_argument(
        "--merge",
        action="append",
        metavar="FROM:INTO",
        help="relabel FROM as INTO (repeatable; applied after --remove-ids, in order)",
    )
    annotate.set_defaults(func=cmd_annotate)

    features = sub.add_parser("features", help="feature lines from a track log")
    features.add_argument("--input", required=True, help="track-log file")
    features.add_argument("--out", default="-", help="output file ('-' = stdout)")
    features.add_argument("--config", help="JSON config file")
    features.add_argument("--features", choices=FEATURE_MODES, help="feature mode")
    features.add_argument("--window", choices=sorted(WINDOW_SECONDS), help="window length")
    features.set_defaults(func=cmd_features)

    classify = sub.add_parser("classify", help="score feature windows")
    classify.add_argument("--input", default="-", help="window matrices, one JSON line each")
    classify.add_argument("--weights", required=True, help="weight file")
    classify.add_argument("--out", default="-", help="output file ('-' = stdout)")
    classify.set_defaults(func=cmd_classify)

    init_w = sub.add_parser("init-weights", help="write seeded test weights")
    init_w.add_argument("--seed", type=int, default=0)
    init_w.add_argument("--dims", default="10,24,64,32", metavar="T,D,F,H")
    init_w.add_argument("--kernel", type=int, default=3, help="conv kernel size (odd)")
    init_w.add_argument("--out", default="-", help="output file ('-' = stdout)")
    init_w.set_defaults(func=cmd_init_weights)

    ev = sub.add_parser("eval", help="score predictions against truth")
    ev.add_argument("predictions", help="file with one predicted label per line")
    ev.add_argument("truths", help="file with one true label per line")
    ev.set_defaults(func=cmd_eval)

    gen = sub.add_parser("gen", help="render a synthetic scenario to frames")
    gen.add_argument("--spec", required=True, help="scenario spec JSON file")
    gen.add_argument("--out", default="-", help="output file ('-' = stdout)")
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PoseGuardError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
