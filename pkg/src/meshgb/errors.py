"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""


class MeshError(ValueError):
    code = "ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class UnknownName(MeshError):
    code = "UNKNOWN_NAME"


class EndpointMismatch(MeshError):
    code = "ENDPOINT_MISMATCH"


class InvalidPath(MeshError):
    code = "INVALID_PATH"


class CycleNeedsBound(MeshError):
    code = "CYCLE_NEEDS_BOUND"


class NoMesh(MeshError):
    code = "NO_MESH"


class NoMeshRelation(MeshError):
    code = "NO_MESH_RELATION"


class LpOfZero(MeshError):
    code = "LP_OF_ZERO"


class NotReducible(MeshError):
    code = "NOT_REDUCIBLE"


class InvalidOrder(MeshError):
    code = "INVALID_ORDER"


class NotMeshLexicographic(MeshError):
    code = "NOT_MESH_LEXICOGRAPHIC"


class MeshLexUnavailable(MeshError):
    code = "MESH_LEX_UNAVAILABLE"


class HypothesisViolated(MeshError):
    code = "HYPOTHESIS_VIOLATED"


class MalformedLayerSpec(MeshError):
    code = "MALFORMED_LAYER_SPEC"


class NoLift(MeshError):
    code = "NO_LIFT"


class CyclicQuiver(MeshError):
    code = "CYCLIC_QUIVER"
