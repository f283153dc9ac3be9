"""Digraph width toolkit: MSO1 logic, graph interpretations, directed topological minors, width measures."""

__version__ = "0.1.0"
