"""CPEB embedding exporter for pre-tokenized parallel corpora."""

__version__ = "0.1.0"

from .exporter import ExportConfig, ExportError, TokenizationMismatch, export

__all__ = ["ExportConfig", "ExportError", "TokenizationMismatch", "export"]
