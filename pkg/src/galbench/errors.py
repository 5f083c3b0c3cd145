"""Exception types shared across the package."""


class GalbenchError(Exception):
    """Base class for every error raised by this package."""


class DslError(GalbenchError):
    """Structure text is malformed or violates a structure invariant."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


class StructureError(GalbenchError):
    """Semantic misuse of a structure: unknown relation or element, bad arity."""


class FormulaError(GalbenchError):
    """Formula text is malformed, ill-scoped, or inconsistent with the signature."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"at position {pos}: {message}"
        super().__init__(message)
        self.pos = pos


class EvalError(GalbenchError):
    """Evaluation failed: unbound identifier, bad assignment, or illegal parameter."""


class GroupError(GalbenchError):
    """Invalid permutation or group operation: degree mismatch, non-bijection,
    not a subgroup, or points outside the acting set."""


class NotInvariantError(GalbenchError):
    """A set was required to be setwise invariant under a group but is not.

    For relative automorphism groups this signals that the set is not a union
    of orbits over the base, so restriction of global automorphisms cannot
    represent its self-maps; it is reported rather than silently repaired.
    """


class CapError(GalbenchError):
    """A configured size cap (universe, group order, enumeration) was exceeded."""


class HypothesisError(GalbenchError):
    """A verification routine was called on inputs violating its hypotheses."""


class InconclusiveError(GalbenchError):
    """A bounded search ended without an answer; absence was not established."""


class FieldEncodingError(GalbenchError):
    """A structure does not encode a field: add/mul graphs missing,
    non-functional, or failing the field axioms."""


class InternalCheckError(GalbenchError):
    """An internal consistency check failed; indicates a bug, surfaced loudly."""
