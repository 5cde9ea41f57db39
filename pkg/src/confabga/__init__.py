"""Detect, validate and classify invented Irish words in MT output."""

__version__ = "0.1.0"
