"""Certificates, verification, conversions, rank search and harnesses."""

from .certificates import (
    CertificateError,
    ChainCertificate,
    ChainStep,
    DividingWitness,
    InpCertificate,
    InpRow,
    SequenceCertificate,
    SequenceEntry,
    TreeCertificate,
    TreeLevel,
    certificate_from_json,
    certificate_to_json,
    rename_certificate,
)
from .convert import (
    ConversionError,
    chain_to_sequence,
    inp_from_witnesses,
    inp_to_tree,
    product_concat,
    sequence_to_chain,
    sequence_to_tree,
    tree_branch_to_sequence,
)
from .harness import (
    DEFAULT_BOUNDS,
    HarnessReport,
    generate_lascar_instances,
    lascar_harness,
    run_completion_sup,
    run_disjunction,
    run_lascar,
)
from .search import (
    RankReport,
    SearchBounds,
    default_alphabet,
    iter_tuple_configs,
    search_rank,
)
from .verify import (
    VerificationResult,
    check_k_inconsistent,
    verify_chain_certificate,
    verify_dividing_witness,
    verify_inp_certificate,
    verify_sequence_certificate,
    verify_tree_certificate,
)

__all__ = [
    "CertificateError",
    "ChainCertificate",
    "ChainStep",
    "ConversionError",
    "DEFAULT_BOUNDS",
    "DividingWitness",
    "HarnessReport",
    "InpCertificate",
    "InpRow",
    "RankReport",
    "SearchBounds",
    "SequenceCertificate",
    "SequenceEntry",
    "TreeCertificate",
    "TreeLevel",
    "VerificationResult",
    "certificate_from_json",
    "certificate_to_json",
    "chain_to_sequence",
    "check_k_inconsistent",
    "default_alphabet",
    "generate_lascar_instances",
    "inp_from_witnesses",
    "inp_to_tree",
    "iter_tuple_configs",
    "lascar_harness",
    "product_concat",
    "rename_certificate",
    "run_completion_sup",
    "run_disjunction",
    "run_lascar",
    "search_rank",
    "sequence_to_chain",
    "sequence_to_tree",
    "tree_branch_to_sequence",
    "verify_chain_certificate",
    "verify_dividing_witness",
    "verify_inp_certificate",
    "verify_sequence_certificate",
    "verify_tree_certificate",
]
