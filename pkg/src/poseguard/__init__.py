"""poseguard: pose-stream violence detection.

Per-frame human-pose keypoints go through identity tracking, geometric
feature extraction, sliding windows, and a CNN-BiLSTM classifier; each
tracked person gets a rolling {neutral, aggressor, victim} label and
sustained non-neutral predictions raise debounced alert events.
"""

from .config import EngineConfig, load_config
from .errors import (
    DegeneratePoseError,
    MergeConflictError,
    ParseError,
    PoseGuardError,
    SchemaError,
    SequencingError,
    SinkError,
    ValidationError,
)
from .estimators import AngleFeatures, CnnBiLstmClassifier, DistanceFeatures
from .events import DebounceState, Event, debounce_update, parse_event, serialize_event
from .features import (
    ANGLE_DIM,
    DISTANCE_DIM,
    FeatureVector,
    angle_features,
    body_scale,
    compute_features,
    distance_features,
)
from .metrics import Report, evaluate, render_report, report_to_dict
from .network import (
    argmax_label,
    bilstm_layer_forward,
    conv1d_forward,
    dense_softmax,
    lstm_cell_step,
    model_forward,
    softmax,
)
from .pipeline import Engine, StreamPipeline
from .rng import SplitMix64
from .scenarios import (
    PersonSpec,
    ScenarioSpec,
    gen_scenario,
    load_scenario_spec,
    scenario_from_dict,
)
from .sinks import CollectSink, FileSink, Sink, StdoutSink, TcpSink, make_sink
from .streams import decimate, parse_frame, read_frames, serialize_frame
from .tracking import KalmanFilter, Track, Tracker, hungarian, iou
from .types import LABELS, BBox, Detection, Frame, Keypoint, Pose
from .weights import (
    LstmParams,
    ModelWeights,
    init_test_weights,
    load_weights,
    load_weights_file,
    save_weights,
    save_weights_file,
)
from .windows import Window, WindowBuffer, build_dataset

__version__ = "0.1.0"

__all__ = [
    "ANGLE_DIM",
    "AngleFeatures",
    "BBox",
    "CnnBiLstmClassifier",
    "CollectSink",
    "DISTANCE_DIM",
    "DebounceState",
    "DegeneratePoseError",
    "Detection",
    "DistanceFeatures",
    "Engine",
    "EngineConfig",
    "Event",
    "FeatureVector",
    "FileSink",
    "Frame",
    "KalmanFilter",
    "Keypoint",
    "LABELS",
    "LstmParams",
    "MergeConflictError",
    "ModelWeights",
    "ParseError",
    "PersonSpec",
    "Pose",
    "PoseGuardError",
    "Report",
    "ScenarioSpec",
    "SchemaError",
    "SequencingError",
    "Sink",
    "SinkError",
    "SplitMix64",
    "StdoutSink",
    "StreamPipeline",
    "TcpSink",
    "Track",
    "Tracker",
    "ValidationError",
    "Window",
    "WindowBuffer",
    "angle_features",
    "argmax_label",
    "bilstm_layer_forward",
    "body_scale",
    "build_dataset",
    "compute_features",
    "conv1d_forward",
    "debounce_update",
    "decimate",
    "dense_softmax",
    "distance_features",
    "evaluate",
    "gen_scenario",
    "hungarian",
    "init_test_weights",
    "iou",
    "load_config",
    "load_scenario_spec",
    "load_weights",
    "load_weights_file",
    "lstm_cell_step",
    "make_sink",
    "model_forward",
    "parse_event",
    "parse_frame",
    "read_frames",
    "render_report",
    "report_to_dict",
    "save_weights",
    "save_weights_file",
    "scenario_from_dict",
    "serialize_event",
    "serialize_frame",
    "softmax",
]
