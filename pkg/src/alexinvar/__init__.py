"""Exact symbolic invariants of finitely presented groups with linking data."""
