"""Divergence-minimizing clustering of binary images on pixel lattices.

The library places M codebook vectors on the foreground of a 2D binary
image by minimizing the Cauchy-Schwarz divergence between a kernel density
of the pixels and a kernel density of the codebook.  Two interchangeable
engines are provided: an exact O(M N)-per-iteration reference working on
the raw point set, and an accelerated variant that casts the densities as
Gaussian convolutions on the pixel grid and needs no distance or
exponential evaluations inside its loop.  A distance-transform weighting, a
k-means baseline, netpbm codecs, synthetic shapes and a benchmark harness
round out the toolbox.
"""

from .bench import BenchRow, BenchSpec, run_bench, write_bench_csv
from .errors import (
    ClusteringError,
    DegenerateCodebook,
    DisjointSupport,
    EmptyCodebook,
    EmptyImage,
    FullImage,
    InvalidM,
    InvalidSigma,
    MalformedHeader,
    ShapeOverflow,
    StrandedVector,
    UnsupportedFormat,
)
from .filters import FilterMask, convolve_separable, gaussian_mask, local_weighted_sums
from .grid import extract_points, rasterize, round_half_away
from .kmeans import KmeansResult, run_kmeans
from .lattice import (
    LatticeItcState,
    default_params,
    density_from_mask,
    lattice_potentials,
    run_lattice,
    update_codebook_lattice,
)
from .netpbm import load_binary_image, load_gray_image, save_field
from .params import DivergenceReport, ItcParams
from .reference import gaussian_2d, potentials, run_reference, update_codebook_reference
from .segmentation import segment
from .shapes import parse_synth, synth_shape
from .trace import IterationRecord, RunTrace
from .weighting import WeightMap, chamfer_transform, weighted_density

__version__ = "0.1.0"

__all__ = [
    "BenchRow",
    "BenchSpec",
    "ClusteringError",
    "DegenerateCodebook",
    "DisjointSupport",
    "DivergenceReport",
    "EmptyCodebook",
    "EmptyImage",
    "FilterMask",
    "FullImage",
    "InvalidM",
    "InvalidSigma",
    "ItcParams",
    "IterationRecord",
    "KmeansResult",
    "LatticeItcState",
    "MalformedHeader",
    "RunTrace",
    "ShapeOverflow",
    "StrandedVector",
    "UnsupportedFormat",
    "WeightMap",
    "chamfer_transform",
    "convolve_separable",
    "default_params",
    "density_from_mask",
    "extract_points",
    "gaussian_2d",
    "gaussian_mask",
    "lattice_potentials",
    "load_binary_image",
    "load_gray_image",
    "local_weighted_sums",
    "parse_synth",
    "potentials",
    "rasterize",
    "round_half_away",
    "run_bench",
    "run_kmeans",
    "run_lattice",
    "run_reference",
    "save_field",
    "segment",
    "synth_shape",
    "update_codebook_lattice",
    "update_codebook_reference",
    "weighted_density",
    "write_bench_csv",
]
