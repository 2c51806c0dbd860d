from lapgap.bounds import BoundReport, bound_report, thm1_lower_bound, thm3_lower_bound
from lapgap.certify import Certificate, PointwiseAudit, certify_thm1, certify_thm3, lemma_check
from lapgap.config import Settings
from lapgap.errors import LapgapError
from lapgap.graph import Graph, from_edge_list
from lapgap.graph_io import parse_graph6, read_graph_file, to_graph6
from lapgap.harness import random_sweep, sweep
from lapgap.records import CertificateRecord, SweepReport
from lapgap.rigidity import EqualityKind, RigidityVerdict, classify_equality
from lapgap.spectral import Spectrum, rayleigh_quotient, spectrum

__all__ = [
    "BoundReport",
    "Certificate",
    "CertificateRecord",
    "EqualityKind",
    "Graph",
    "LapgapError",
    "PointwiseAudit",
    "RigidityVerdict",
    "Settings",
    "Spectrum",
    "SweepReport",
    "bound_report",
    "certify_thm1",
    "certify_thm3",
    "classify_equality",
    "from_edge_list",
    "lemma_check",
    "parse_graph6",
    "random_sweep",
    "rayleigh_quotient",
    "read_graph_file",
    "spectrum",
    "sweep",
    "thm1_lower_bound",
    "thm3_lower_bound",
    "to_graph6",
]
