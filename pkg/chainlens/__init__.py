"""chainlens: raw block-file parsing and chain-graph analytics."""

__version__ = "0.1.0"
