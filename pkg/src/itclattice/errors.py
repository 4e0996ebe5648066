"""Exception types shared across the library."""


class ClusteringError(Exception):
    """Base class for all itclattice errors."""


class EmptyImage(ClusteringError):
    """Binary image or weight map carries no foreground mass."""


class FullImage(ClusteringError):
    """Image has no background cell anywhere.

    Unreachable through ``chamfer_transform`` because cells beyond the image
    border always count as background; kept for callers that disable that
    rule.
    """


class InvalidSigma(ClusteringError):
    """Kernel width must be strictly positive."""


class InvalidM(ClusteringError):
    """Requested codebook size is outside [1, N]."""


class EmptyCodebook(ClusteringError):
    """Operation requires at least one codebook vector."""


class DegenerateCodebook(ClusteringError):
    """Codebook self-potential underflowed to zero."""


class DisjointSupport(ClusteringError):
    """Data and codebook densities do not overlap; divergence is infinite."""


class StrandedVector(ClusteringError):
    """A codebook vector sits outside the data support beyond kernel reach.

    When raised out of a full run, ``trace`` carries the iteration records
    completed before the failure (timing harnesses use them; the clustering
    result itself is void).
    """

    def __init__(self, index, message=None, trace=None):
        self.index = index
        self.trace = trace
        super().__init__(message or f"codebook vector {index} is stranded")


class ShapeOverflow(ClusteringError):
    """Synthetic shape does not fit into the requested grid."""


class MalformedHeader(ClusteringError):
    """Netpbm file header or payload is damaged."""


class UnsupportedFormat(ClusteringError):
    """File is valid netpbm but not a flavor this codec reads."""
