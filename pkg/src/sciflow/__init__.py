"""Analytics engine for the science-technology interface.

Subpackages:
  corpus     ingest, validation, and filtered views of papers/patents/researchers
  metrics    per-paper scientific facts and researcher-level aggregates
  predictor  GCN-based patent-citation prediction, patentability, P-index
  interplay  paper matrix / patent icicle / citation flows and the field layout
  server     read-only FastAPI query service
"""

__version__ = "0.1.0"
