"""Exact invariants of isolated hypersurface singularities."""
