"""Crashworthiness optimization benchmark problems."""

from ._crashsuite import SOLVER_PATH_ENV, CrashsuiteError, Problem, create_problem

__all__ = ["SOLVER_PATH_ENV", "CrashsuiteError", "Problem", "create_problem"]
