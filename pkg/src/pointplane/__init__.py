"""Model checking for the point-plane axioms of projective 3-space on PG(3, q)."""

__version__ = "0.1.0"
