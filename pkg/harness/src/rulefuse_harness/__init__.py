"""Experiment harness for the rulefuse rule engine.

Trains black-box models, exports their decisions and importance-based
feature orderings in the engine's file formats, and drives the engine's
CLI end to end.
"""

from .blackbox import (
    MODEL_KINDS,
    TrainedBlackBox,
    export_global_ordering,
    export_local_orderings,
    export_predictions,
    train_blackbox,
)
from .data import Dataset, load_dataset, write_dataset_csv
from .pipeline import format_table, run_pipeline

__version__ = "0.1.0"
