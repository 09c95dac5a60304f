"""Half-region depth, local depth, and depth-based clustering for curves."""

from ._fdepth import (
    Dendrogram,
    FunctionalDataset,
    cut_tree,
    depth_all,
    gower_dissimilarity,
    load_csv,
    local_depth_all,
    local_depth_hr_finite,
    local_halfspace_depth_1d,
    select_tau,
    silhouette,
    similarity_matrix,
    sup_distance,
    ward_linkage,
)

__all__ = [
    "Dendrogram",
    "FunctionalDataset",
    "cut_tree",
    "depth_all",
    "gower_dissimilarity",
    "load_csv",
    "local_depth_all",
    "local_depth_hr_finite",
    "local_halfspace_depth_1d",
    "select_tau",
    "silhouette",
    "similarity_matrix",
    "sup_distance",
    "ward_linkage",
]
