"""Shared bits for the demo scripts: an output directory next to them."""

from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent / "output"
OUT_DIR.mkdir(exist_ok=True)
