"""Nonreciprocal SSH chain dynamics and its LC-circuit counterpart."""
