"""Exception hierarchy.

Precondition failures (bad inputs, out-of-domain parameters) derive from
:class:`PreconditionError`; numerical refusals (truncation tails, quadrature
budgets, unstable grid sups) derive from :class:`NumericalRefusal`.  The CLI
maps the two families to distinct exit codes.
"""


class FockError(Exception):
    """Base class for all errors raised by focklab."""

    def __init__(self, message, *, field=None, **details):
        super().__init__(message)
        self.field = field
        self.details = details

    def to_dict(self):
        out = {"error": type(self).__name__, "message": str(self)}
        if self.field is not None:
            out["field"] = self.field
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


class PreconditionError(FockError, ValueError):
    """An input violates the documented precondition of an operation."""


class DomainError(PreconditionError):
    """A transform is undefined for the requested parameters."""


class NotIntegrableError(PreconditionError):
    """A dominating function is not integrable over C^n."""


class NumericalRefusal(FockError, ArithmeticError):
    """The requested accuracy cannot be certified with the given budget."""


class TruncationError(NumericalRefusal):
    """A kernel-coefficient tail or unitarity defect exceeds tolerance."""


class QuadratureBudgetError(NumericalRefusal):
    """The quadrature rule is too small for the requested exactness."""


class EvaluationError(NumericalRefusal):
    """An integrand produced a non-finite value at a quadrature node."""


class StabilizationError(NumericalRefusal):
    """A grid supremum did not stabilize under refinement."""


class OutputError(PreconditionError):
    """An output path cannot be written."""


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value
