"""Exception hierarchy.

Every error carries a short machine-readable ``code`` and a ``context`` dict so
the command line can render it as ``{code, message, context}``.
"""

from __future__ import annotations


class Genus2Error(Exception):
    code = "error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "context": self.context}


class DomainError(Genus2Error, ValueError):
    code = "domain_error"


class NumericInstabilityError(Genus2Error, ArithmeticError):
    code = "numeric_instability"


class UnattainableAccuracyError(Genus2Error, ArithmeticError):
    code = "unattainable_accuracy"


class AmbiguityError(Genus2Error):
    code = "ambiguous_characteristic"


class ResampleError(Genus2Error):
    """Sample point was degenerate; the caller should pick another one."""

    code = "resample"


class IllConditionedSliceError(Genus2Error):
    code = "ill_conditioned_slice"


class UnresolvedClassificationError(Genus2Error):
    code = "unresolved_classification"


class DegenerateInputError(Genus2Error, ValueError):
    code = "degenerate_input"


class NotASplittingError(Genus2Error):
    code = "not_a_splitting"


class TableVerificationError(Genus2Error):
    code = "table_verification_failure"


class ResourceError(Genus2Error):
    code = "resource_limit"
