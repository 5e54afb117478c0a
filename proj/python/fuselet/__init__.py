"""Multiscale image fusion with NSCT and wavelet decompositions."""

from ._fuselet import (
    DimensionMismatch,
    ImageIoError,
    canny_edges,
    dwt_forward,
    dwt_inverse,
    entropy,
    evaluate,
    fuse,
    load_image,
    multifocus_fixture,
    nsct_forward,
    nsct_inverse,
    piella_metric,
    save_image,
    similarity,
    uiqi,
    wamm_weights,
    weighted_fusion_quality,
)

__all__ = [
    "DimensionMismatch",
    "ImageIoError",
    "canny_edges",
    "dwt_forward",
    "dwt_inverse",
    "entropy",
    "evaluate",
    "fuse",
    "load_image",
    "multifocus_fixture",
    "nsct_forward",
    "nsct_inverse",
    "piella_metric",
    "save_image",
    "similarity",
    "uiqi",
    "wamm_weights",
    "weighted_fusion_quality",
]
