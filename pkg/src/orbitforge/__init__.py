"""Sharp lower bounds on periodic-orbit counts forced by Sharkovskii's ordering."""

__version__ = "0.1.0"
