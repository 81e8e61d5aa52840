"""Exception taxonomy shared by all modules, with CLI exit codes."""

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_UNREACHABLE = 3
EXIT_INVARIANT = 4


class RectisplineError(Exception):
    """Base class; carries a machine-readable error code and exit status."""

    code = "error"
    exit_status = EXIT_INVARIANT

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ValidationError(RectisplineError):
    code = "validation"
    exit_status = EXIT_VALIDATION


class OverlappingObstacles(ValidationError):
    code = "overlapping_obstacles"


class CarrierIntersectsObstacle(ValidationError):
    code = "carrier_intersects_obstacle"


class EndpointInsideObstacle(ValidationError):
    code = "endpoint_inside_obstacle"


class EndpointInsideCarrier(ValidationError):
    code = "endpoint_inside_carrier"


class AxisParallelEdge(ValidationError):
    code = "axis_parallel_edge"


class NonSimpleBoundary(ValidationError):
    code = "non_simple_boundary"


class SharedCoordinate(ValidationError):
    code = "shared_coordinate"


class PointNotOnEdge(RectisplineError):
    code = "point_not_on_edge"


class EdgeNotInSplinegon(RectisplineError):
    code = "edge_not_in_splinegon"


class NotConcaveIn(RectisplineError):
    code = "not_concave_in"
    exit_status = EXIT_VALIDATION


class DegenerateGeometry(RectisplineError):
    code = "degenerate_geometry"
    exit_status = EXIT_VALIDATION


class Unreachable(RectisplineError):
    code = "unreachable"
    exit_status = EXIT_UNREACHABLE


class UnreachableOnGrid(RectisplineError):
    code = "unreachable_on_grid"
    exit_status = EXIT_UNREACHABLE


class PathNotInFreeSpaceP(RectisplineError):
    code = "path_not_in_free_space_p"


class DecompositionMissing(RectisplineError):
    code = "decomposition_missing"
