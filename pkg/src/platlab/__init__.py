"""Jump-physics analysis and difficulty metrics for 2D platformer levels."""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    CharacterConfig,
    Diagnostic,
    Level,
    LevelFormatError,
    MotionAxis,
    MotionSpec,
    MovementConfig,
    Platform,
    PlatformKind,
    PlatformRole,
    JumpModel,
    level_from_dict,
    level_to_dict,
    parse_level,
    serialize_level,
    validate_level,
)
from .trajectory import (  # noqa: F401
    ApproachMode,
    Direction,
    DoubleJumpTiming,
    JumpTrajectory,
    JumpType,
    MotionSegment,
    OutOfRangeError,
    classify_jump,
    evaluate_at,
    generate_trajectories,
    is_reachable,
    landing_point,
    sample_polyline,
)
from .probability import (  # noqa: F401
    DifficultyConfig,
    EdgeMetrics,
    NoiseKind,
    NoiseModel,
    SamplingConfig,
    difficulty_coefficient,
    estimate_edge,
    noise_sigma,
    sample_takeoffs,
)
from .navgraph import Edge, NavGraph, build_graph, discretize_dynamic  # noqa: F401
from .paths import (  # noqa: F401
    Path,
    PathMetric,
    PathReport,
    PathSummary,
    build_path_report,
    enumerate_paths,
    min_difficulty_path,
    path_difficulty,
    path_probability,
)
from .validation import (  # noqa: F401
    MaeGridResult,
    ScreenSummary,
    TrialFormatError,
    TrialRecord,
    estimate_screen,
    load_trials,
    mae,
    mae_grid,
    summarize,
    synthesize_trials,
)
from .report import AnalysisReport, analyze_level  # noqa: F401
