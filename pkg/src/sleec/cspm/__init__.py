from .emit import emit_cspm, emit_assertions, emit_counts, comparator_def
from .lint import lint

__all__ = ["emit_cspm", "emit_assertions", "emit_counts", "comparator_def", "lint"]
