"""Humor classification for short Spanish texts.

Pipeline: corpus ingestion and crowd-label aggregation -> tokenization ->
hand-crafted features -> from-scratch classifiers -> evaluation reports,
plus a small annotation HTTP service for collecting new labels.
"""

__version__ = "0.1.0"
