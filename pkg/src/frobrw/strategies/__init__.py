"""Terminating reduction strategies: group algebras and interacting bialgebras."""
