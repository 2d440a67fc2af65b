"""Cycle bases, the Grinberg equation and a cycle-deletion Hamiltonicity criterion."""

from .cycles import (
    Cycle,
    CycleBasis,
    EdgeSet,
    cycle_from_edge_set,
    cycle_from_walk,
    cyclomatic_number,
    fundamental_basis,
    gf2_rank,
    horton_mcb,
    is_cycle_basis,
    simple_cycles,
    xor,
)
from .decision import Certificate, Outcome, Reason, Verdict, decide, oracle_hamiltonian, verify_certificate, xor_all
from .graph import Graph, build_graph, encode_graph6, is_connected, parse_edge_list, parse_graph6, read_graph
from .grinberg import (
    FaceSpec,
    SolutionConfig,
    build_pool,
    enumerate_solutions,
    equation_residual,
    inclusion_exclusion_audit,
    planar_criterion_sum,
    verify_hamilton_set_identity,
)
from .harness import (
    CorpusSpec,
    ExhaustiveLabeled,
    FileSource,
    Gnp,
    Named,
    emit_report,
    enumerate_labeled_graphs,
    generate_gnp,
    load_corpus_spec,
    named_graph,
    run_corpus,
)
from .removal import (
    WorkingSet,
    edge_multiplicities,
    is_removable,
    lemma31_check,
    prop31_violation,
    prop32_violation,
    propagate_rules,
)

__version__ = "0.1.0"
