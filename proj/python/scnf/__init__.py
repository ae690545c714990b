"""Stochastic CNF networks: conversion, simulation, learning and metrics."""

from ._scnf import (
    InvalidArgument,
    Model,
    __version__,
    acf,
    estimate_marginals,
    exact_marginals,
    fidelity,
    gen_dataset,
    learn,
    random_pbn,
    simulate,
    to_pbn,
    to_scnfn,
    transition_matrix,
)

__all__ = [
    "InvalidArgument",
    "Model",
    "acf",
    "estimate_marginals",
    "exact_marginals",
    "fidelity",
    "gen_dataset",
    "learn",
    "random_pbn",
    "simulate",
    "to_pbn",
    "to_scnfn",
    "transition_matrix",
]
