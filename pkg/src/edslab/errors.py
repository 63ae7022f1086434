"""Exception hierarchy.

Every domain error derives from EdslabError so the CLI can map failures to
exit code 2 uniformly.  BudgetExhausted is deliberately *not* raised by the
sieve (budget exhaustion degrades to Unknown records); it exists for callers
that want a hard-failure mode.
"""


class EdslabError(Exception):
    """Base class for all library errors."""


class SingularCurve(EdslabError):
    pass


class PointNotOnCurve(EdslabError):
    pass


class NotMinimal(EdslabError):
    pass


class DegenerateSzpiro(EdslabError):
    pass


class InvalidKernel(EdslabError):
    pass


class NonRationalKernel(EdslabError):
    pass


class DomainMismatch(EdslabError):
    pass


class NonCoprimeDegrees(EdslabError):
    pass


class ReducesToIdentity(EdslabError):
    pass


class IdentityPoint(EdslabError):
    pass


class DivergencePrecision(EdslabError):
    pass


class KernelPoint(EdslabError):
    pass


class UnboundedComponent(EdslabError):
    pass


class BoundedComponent(EdslabError):
    pass


class HypothesisViolated(EdslabError):
    pass


class PreconditionViolated(EdslabError):
    pass


class FirstAlternative(EdslabError):
    """Raised by emit_thue when every prime of B_{nP'} already lies in S(P');
    the integrality alternative applies and no Thue instance exists."""


class InvalidA(EdslabError):
    pass


class TorsionPoint(EdslabError):
    pass


class NotOnBoundedComponent(EdslabError):
    pass


class EvenM(EdslabError):
    pass


class BudgetExhausted(EdslabError):
    pass
