"""
Space-filling curve construction engine for planar self-similar sets.
"""

__version__ = "1.0.0"
