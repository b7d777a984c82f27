"""Exception types shared across the package."""


class MeshFormatError(ValueError):
    """Mesh text or constructor arguments are malformed."""


class InvalidMeshError(ValueError):
    """Mesh parses but violates a structural requirement (overlap, hole, ...)."""


class PreconditionViolated(ValueError):
    """An operation was called outside its documented domain."""


class NotInteriorLEdge(PreconditionViolated):
    """A constraint block was requested for a cross-cut or ray."""


class DuplicateKnots(PreconditionViolated):
    """Knot values that must be pairwise distinct are not."""


class NotAPermutation(ValueError):
    """An l-edge ordering does not enumerate every interior l-edge exactly once."""
