"""Structured error types.

Every error carries a short machine code and the CLI exit status it maps to.
"""
from __future__ import annotations

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_MATH = 3


class CalculusError(Exception):
    code = "CalculusError"
    exit_code = EXIT_MATH

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


def _make(name: str, exit_code: int = EXIT_MATH, base=CalculusError):
    return type(name, (base,), {"code": name, "exit_code": exit_code})


NearDegenerate = _make("NearDegenerate")
QOutOfRange = _make("QOutOfRange")
DenominatorPole = _make("DenominatorPole")
SingularMap = _make("SingularMap")
CoincidentNodes = _make("CoincidentNodes")
EigenvalueCollision = _make("EigenvalueCollision")
DegreeOverflow = _make("DegreeOverflow")
NoThetaRoot = _make("NoThetaRoot")
ZeroTauOnLattice = _make("ZeroTauOnLattice")
ThetaMismatch = _make("ThetaMismatch")
RamifiedOnly = _make("RamifiedOnly")
UnsupportedForm = _make("UnsupportedForm")
DegenerateChi = _make("DegenerateChi")
BoundaryViolated = _make("BoundaryViolated")
ParseError = _make("ParseError", EXIT_USAGE)

__all__ = [
    "CalculusError", "NearDegenerate", "QOutOfRange", "DenominatorPole",
    "SingularMap", "CoincidentNodes", "EigenvalueCollision", "DegreeOverflow",
    "NoThetaRoot", "ZeroTauOnLattice", "ThetaMismatch", "RamifiedOnly",
    "UnsupportedForm", "DegenerateChi", "BoundaryViolated", "ParseError",
    "EXIT_OK", "EXIT_VERIFY", "EXIT_USAGE", "EXIT_MATH",
]
