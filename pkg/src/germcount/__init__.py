"""Counting zero-dimensional stable types of corank-1 map germs."""

from __future__ import annotations

from .afinite import Verdict, distinguish, invariant_N, verdict
from .colength import ColengthResult, jet_quotient_dim, local_colength
from .counting import (
    CountReport,
    StableTypeDescriptor,
    count_both,
    count_by_colength,
    count_by_formula,
    enumerate_stable_partitions,
    infer_weights,
    milnor_from_colength,
)
from .germparse import GermSpec, make_germ, parse_germ_file, parse_polynomial
from .partition import Partition, stabilizer_order
from .polyring import Polynomial, VariableContext

__version__ = "0.1.0"

__all__ = [
    "ColengthResult", "CountReport", "GermSpec", "Partition", "Polynomial",
    "StableTypeDescriptor", "VariableContext", "Verdict", "count_both", "count_by_colength",
    "count_by_formula", "distinguish", "enumerate_stable_partitions", "infer_weights",
    "invariant_N",
    "jet_quotient_dim", "local_colength", "make_germ", "milnor_from_colength",
    "parse_germ_file", "parse_polynomial", "stabilizer_order", "verdict",
]
