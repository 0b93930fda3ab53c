"""Plane graph toolkit for (1,1,0)-defective 3-coloring of planar graphs
without 5-cycles or intersecting triangles."""

from .coloring import (ColoringSpec, SolveResult, SuperextensionReport, check_superextendable,
                       enumerate_boundary_colorings, solve, verify)
from .configurations import (LEMMAS, ConfigurationMatch, OracleVerdict, explain_negative_charge,
                             scan, verify_reduction)
from .discharging import ChargeLedger, audit_final, classify, discharge
from .generators import enumerate_plane_graphs, plant_configuration, sample_in_class
from .graph_class import ClassReport, in_class_G
from .plane_graph import (EmbeddingError, Graph, GraphFormatError, PlaneGraph, dumps, load,
                          loads_any)

__version__ = "0.1.0"

__all__ = [
    "ChargeLedger", "ClassReport", "ColoringSpec", "ConfigurationMatch", "EmbeddingError",
    "Graph", "GraphFormatError", "LEMMAS", "OracleVerdict", "PlaneGraph", "SolveResult",
    "SuperextensionReport", "audit_final", "check_superextendable", "classify", "discharge",
    "dumps", "enumerate_boundary_colorings", "enumerate_plane_graphs", "explain_negative_charge",
    "in_class_G", "load", "loads_any", "plant_configuration", "sample_in_class", "scan", "solve",
    "verify", "verify_reduction",
]
