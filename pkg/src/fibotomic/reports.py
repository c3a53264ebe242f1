"""Result record shared by the theorem checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one identity check; a failed check is data, not an exception."""

    check: str
    params: dict
    case: str
    ok: bool
    lhs: object = None
    rhs: object = None
    detail: str = ""
    extra: dict = field(default_factory=dict)
