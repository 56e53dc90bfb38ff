"""Exact-repair regenerating codes with a tunable storage/bandwidth trade-off."""

from ._cascade_codes import Code, SingularMatrix, params, t_sequence, verify

__all__ = ["Code", "SingularMatrix", "params", "t_sequence", "verify"]
