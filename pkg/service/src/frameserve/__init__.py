"""Reference trainer and generation server for the frameparse protocol."""
from frameserve.data import SchemaError, load_stage_file, validate_record
from frameserve.train import TrainResult, TrainRun, fine_tune, smoothed_window_decrease

__version__ = "0.1.0"

__all__ = [
    "SchemaError",
    "TrainResult",
    "TrainRun",
    "fine_tune",
    "load_stage_file",
    "smoothed_window_decrease",
    "validate_record",
    "__version__",
]
