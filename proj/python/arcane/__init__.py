"""Cross-campaign attacker re-identification workbench (Python surface).

Thin re-export of the compiled ``_arcane`` extension: dataset generation,
fingerprinting, similarity, and the leave-one-out evaluation.
"""

from ._arcane import (
    __version__,
    cosine,
    default_roster,
    evaluate,
    feature_names,
    fingerprint,
    generate,
    similarity_matrix,
)

__all__ = [
    "__version__",
    "cosine",
    "default_roster",
    "evaluate",
    "feature_names",
    "fingerprint",
    "generate",
    "similarity_matrix",
]
