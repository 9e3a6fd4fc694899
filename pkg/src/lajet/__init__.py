"""Exact computer algebra for free Lie algebroids over Q[y1..ym].

Modules: ``poly`` (coefficient ring), ``algebroid`` (specs and axioms),
``enveloping`` (PBW algebra), ``jets`` (truncated jets and connections),
``groupoid`` (formal groupoid), ``complexes`` (Hochschild complexes),
``homology`` and ``hh`` (exact homology), ``cli``.
"""

from .algebroid import AlgebroidSpec, LElement, anchor_apply, bracket, check_axioms, examples
from .config import load_config, parse_config
from .groupoid import GroupoidData, groupoid_report
from .hh import hh_report
from .homology import GradedComplex, HomologyTable, evaluate_at_point, homology_ranks
from .jets import Jet, JetTensor, verify_jets
from .poly import Derivation, Poly
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "AlgebroidSpec", "Derivation", "GradedComplex", "GroupoidData", "HomologyTable", "Jet",
    "JetTensor", "LElement", "Poly", "Report", "anchor_apply", "bracket", "check_axioms",
    "evaluate_at_point", "examples", "groupoid_report", "hh_report", "homology_ranks",
    "load_config", "parse_config", "verify_jets",
]
