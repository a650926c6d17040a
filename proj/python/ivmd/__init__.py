"""Interval-valued moderate deviation means and BCI decision fusion."""

from ._ivmd import (
    IvmdError,
    bisection_oracle,
    build_interval,
    compare,
    fuse,
    fuse_mff,
    implication,
    iv_owa,
    k_alpha,
    quantifier_weights,
    selftest,
    wd_mean,
)

__all__ = [
    "IvmdError",
    "bisection_oracle",
    "build_interval",
    "compare",
    "fuse",
    "fuse_mff",
    "implication",
    "iv_owa",
    "k_alpha",
    "quantifier_weights",
    "selftest",
    "wd_mean",
]
