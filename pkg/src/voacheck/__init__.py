"""Exact free-field vertex algebra computations: Wick OPEs, W-algebra realizations, bosonization and characters."""
