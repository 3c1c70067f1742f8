"""pipec: stream pipelines fused to first-order C by evaluation to normal form."""

__version__ = "0.1.0"
