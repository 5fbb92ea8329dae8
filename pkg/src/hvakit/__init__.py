"""Exact-arithmetic toolkit for homing vector automata."""

from .numerics import QMatrix, QVector
from .machine import HvaMachine, ModeFlags, Guard, Transition, parse_machine, serialize_machine, validate
from .engine import Outcome, RunOptions, Verdict, run

__version__ = "0.1.0"
