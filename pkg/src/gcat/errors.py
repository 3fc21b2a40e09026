"""Exception types shared by every module.

Validation failures carry the full list of violations found; the exception
class is chosen from the kind of the first one.  ``LemmaFailure`` is kept
apart from user-facing validation errors because it means a construction
disagreed with a proved statement, i.e. a bug in this package.
"""

from __future__ import annotations

from typing import NamedTuple


class Violation(NamedTuple):
    kind: str
    detail: str


class ValidationError(ValueError):
    """Input does not satisfy the laws of the structure it claims to be."""

    def __init__(self, violations: list[Violation] | str):
        if isinstance(violations, str):
            violations = [Violation(type(self).__name__, violations)]
        self.violations = list(violations)
        shown = "; ".join(f"{v.kind}: {v.detail}" for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            shown += f" (+{more} more)"
        super().__init__(shown)


# categories and functors
class MissingComposite(ValidationError): pass
class NonAssociative(ValidationError): pass
class IdentityLawViolation(ValidationError): pass
class DanglingEndpoint(ValidationError): pass
class BadComposite(ValidationError): pass
class DuplicateId(ValidationError): pass
class NotAPartialOrder(ValidationError): pass
class EndpointMismatch(ValidationError): pass
class CompositionNotPreserved(ValidationError): pass
class IdentityNotPreserved(ValidationError): pass

# groups and actions
class NoIdentity(ValidationError): pass
class NoInverse(ValidationError): pass
class MalformedTable(ValidationError): pass
class NotASubgroup(ValidationError): pass
class NotAGroupHomomorphism(ValidationError): pass
class IdentityNotIdentity(ValidationError): pass
class NotEquivariant(ValidationError): pass
class NotADiagram(ValidationError): pass

# simplicial sets
class BadIndices(ValidationError): pass
class BadFaceData(ValidationError): pass
class SimplicialIdentityViolation(ValidationError): pass
class NotRegular(ValidationError): pass
class CyclicOneSkeleton(ValidationError): pass

# colimits
class NotASubcategory(ValidationError): pass
class NotASieve(ValidationError): pass
class NotDwyer(ValidationError): pass
class NotPoset(ValidationError): pass
class CyclicPresentation(ValidationError): pass
class NotMono(ValidationError): pass

# manifests / CLI
class SchemaError(ValidationError): pass
class UnknownSuite(ValidationError): pass


class BudgetExceeded(RuntimeError):
    """An exhaustive search ran past its configured node budget."""


class SearchBudgetExceeded(BudgetExceeded): pass
class ClosureBudgetExceeded(BudgetExceeded): pass
class EnumerationBudgetExceeded(BudgetExceeded): pass


class LemmaFailure(AssertionError):
    """A finite instance contradicted a statement the constructions rely on."""


class TranspositionMismatch(LemmaFailure): pass
class ComparisonNotIso(LemmaFailure): pass


_BY_NAME = {
    cls.__name__: cls
    for cls in list(globals().values())
    if isinstance(cls, type) and issubclass(cls, ValidationError)
}


def raise_for(violations: list[Violation]) -> None:
    """Raise the error class matching the first violation, if any."""
    if violations:
        raise _BY_NAME.get(violations[0].kind, ValidationError)(violations)
