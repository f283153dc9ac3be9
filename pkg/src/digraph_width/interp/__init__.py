"""Interpretations reducing MSO1 over all graphs to {1,3}-regular planar graphs and their subdivisions."""

from .drawing import Drawing, draw
from .gadgets import Construction, planarize, regularize
from .transform import (
    I1, I2, I3, INTERPRETATIONS, STACK, Interpretation, Theorem41Result, interpret_model,
    theorem41, transform_formula, transform_through,
)

__all__ = [
    "Drawing", "draw", "Construction", "planarize", "regularize", "I1", "I2", "I3",
    "INTERPRETATIONS", "STACK", "Interpretation", "Theorem41Result", "interpret_model",
    "theorem41", "transform_formula", "transform_through",
]
