"""Typed domain errors. The CLI maps each of these to exit status 1."""


class TopGraphError(Exception):
    """Base class for every domain error raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__


class DanglingEndpoint(TopGraphError):
    pass


class DuplicateId(TopGraphError):
    pass


class HasLoops(TopGraphError):
    pass


class HasInfiniteMultiplicity(TopGraphError):
    pass


class UnknownVertex(TopGraphError):
    pass


class ConditionIViolation(TopGraphError):
    def __init__(self, edge_class, detail=""):
        self.edge_class = edge_class
        super().__init__(f"edge class {edge_class!r}: {detail}" if detail else f"edge class {edge_class!r}")


class ConditionIIViolation(TopGraphError):
    def __init__(self, target_class, vertex, expected, found):
        self.target_class = target_class
        self.vertex = vertex
        self.expected = expected
        self.found = found
        super().__init__(
            f"lifts of {target_class!r} at {vertex!r}: expected total multiplicity {expected}, found {found}"
        )


class PropernessViolation(TopGraphError):
    def __init__(self, target_class, detail=""):
        self.target_class = target_class
        super().__init__(f"edge class {target_class!r}: {detail}" if detail else f"edge class {target_class!r}")


class GraphMismatch(TopGraphError):
    pass


class PreconditionViolation(TopGraphError):
    pass


class NotRegularSubset(TopGraphError):
    pass


class NotASubgraph(TopGraphError):
    pass


class NotHereditary(TopGraphError):
    pass


class RangeNotSurjective(TopGraphError):
    pass


class RangeNotProper(TopGraphError):
    pass


class NotFinitelyRepresentable(TopGraphError):
    pass


class DepthExceedsStages(TopGraphError):
    pass


class InvariantViolation(TopGraphError):
    pass


class NotLineShaped(TopGraphError):
    pass


class StageError(TopGraphError):
    """A factor-map error raised while validating stage ``stage`` of a system."""

    def __init__(self, stage: int, cause: TopGraphError):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage}: {cause.name}: {cause}")

    @property
    def name(self) -> str:
        return self.cause.name
