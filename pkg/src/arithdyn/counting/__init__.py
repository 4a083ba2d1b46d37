from .api import (
    CountSequence,
    HyperellipticCurve,
    PolySystem,
    candidate_count,
    count_points,
    count_sequence,
    hyperelliptic_count,
    hyperelliptic_sequence,
    load_counts_csv,
    load_variety,
    save_counts_csv,
)
from .backend import available_backends, get_backend
from .tables import MAX_TABLE_SIZE, ZechTable, build_table

__all__ = [
    "CountSequence",
    "HyperellipticCurve",
    "PolySystem",
    "MAX_TABLE_SIZE",
    "ZechTable",
    "available_backends",
    "build_table",
    "candidate_count",
    "count_points",
    "count_sequence",
    "get_backend",
    "hyperelliptic_count",
    "hyperelliptic_sequence",
    "load_counts_csv",
    "load_variety",
    "save_counts_csv",
]
