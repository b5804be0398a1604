"""Exception types shared across the package."""


class LawsonError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(LawsonError):
    """Invalid user-supplied parameters (bad family name, m or k < 2, ...)."""


class ExcludedCase(ValidationError):
    """The (m, k) = (2, 2) pair, excluded from analysis unless explicitly allowed."""


class DegenerateInput(LawsonError):
    """Spanners that fail to span the expected dimension."""


class DegenerateCircle(DegenerateInput):
    """Two points that do not determine a unique great circle."""


class CapExceeded(LawsonError):
    """Group closure exceeded the element cap without terminating."""


class NonInvolutiveGenerator(LawsonError):
    """A closure generator is not an involutive orthogonal matrix."""


class ParityUndefined(LawsonError):
    """Element parity requested for a group element carrying both parities."""


class MissingParity(LawsonError):
    """A signed count needs parities, the group has mixed-parity elements,
    and the double-cover path was explicitly disabled."""


class NonManifoldGluing(LawsonError):
    """Face-side gluing is not a fixed-point-free involution on sides."""


class NonIntegerChi(LawsonError):
    """The combinatorial Euler-characteristic formula produced a non-integer."""


class AlreadyOrientable(LawsonError):
    """Orientation double cover requested for an orientable complex."""


class ActionNotFree(LawsonError):
    """The central involution fixes a cell, so the quotient is not a surface."""


class BranchRuleInapplicable(LawsonError):
    """Tangent-plane enumeration requested at an unbranched vertex."""


class InconsistentEvidence(LawsonError):
    """Plane classification contradicts the detected central-involution status."""


class CrossCheckError(LawsonError):
    """Two independent computational paths disagreed in verify mode."""
