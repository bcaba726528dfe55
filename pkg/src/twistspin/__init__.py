"""Exact index, gluing-matrix and knot-group calculus for Gluck twists on
branched twist spins."""

from pathlib import Path

from .errors import TwistSpinError

__version__ = "0.1.0"

KNOT_DIR = Path(__file__).parent / "data" / "knots"


def bundled_knots():
    return sorted(p.stem for p in KNOT_DIR.glob("*.knot"))


def load_knot(name_or_path):
    """Parse a knot file given by path or by bundled name (e.g. ``"trefoil"``)."""
    from .fpgroup import parse_presentation

    p = Path(name_or_path)
    if not p.exists() and (KNOT_DIR / f"{name_or_path}.knot").exists():
        p = KNOT_DIR / f"{name_or_path}.knot"
    return parse_presentation(p.read_text())


__all__ = ["KNOT_DIR", "TwistSpinError", "bundled_knots", "load_knot", "__version__"]
