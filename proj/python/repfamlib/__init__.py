from ._repfam import (
    k_path,
    k_tree,
    long_directed_cycle,
    meg,
    min_scss,
    rep_linear_uniform,
    rep_uniform,
    short_cheap_tour,
    steiner_tree,
)

__all__ = [
    "k_path",
    "k_tree",
    "long_directed_cycle",
    "meg",
    "min_scss",
    "rep_linear_uniform",
    "rep_uniform",
    "short_cheap_tour",
    "steiner_tree",
]
