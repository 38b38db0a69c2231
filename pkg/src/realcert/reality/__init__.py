"""Reality certification: rds checks, quochain search, tree composition,
reality indexes, the assumption ledger and the survey enumerator."""
from .certificates import (
    Certified, CertifyResult, GtreeChain, HlwProof, Inconclusive, Quochain, RdsCertificate,
    RealityIndex, RealProof, Refuted, RestrictionWitness, SimpleProof, Status,
)
from .compose import enumerate_gtree_multicuts, gtree_compose, kkop_tree_compose
from .ledger import AssumptionLedger, Fact, LedgerError
from .rds import refute_hlw_by_restriction
from .replay import check_chain, check_rds_certificate, replay
from .search import Certifier, certify_real, check_rds, reality_index
from .survey import SurveyError, SurveyParams, SurveyReport, survey

__all__ = [
    "AssumptionLedger", "Certified", "Certifier", "CertifyResult", "Fact", "GtreeChain", "HlwProof",
    "Inconclusive", "LedgerError", "Quochain", "RdsCertificate", "RealProof", "RealityIndex", "Refuted",
    "RestrictionWitness", "SimpleProof", "Status", "SurveyError", "SurveyParams", "SurveyReport",
    "certify_real", "check_chain", "check_rds", "check_rds_certificate", "enumerate_gtree_multicuts",
    "gtree_compose", "kkop_tree_compose", "reality_index", "refute_hlw_by_restriction", "replay", "survey",
]
