"""PBPO+ graph rewriting over lattice-labeled graphs, with BDD reduction."""

from ._core import (
    Bdd,
    Graph,
    Lattice,
    Match,
    PbpoError,
    Rule,
    Workspace,
    apply,
    bdd_lattice,
    bdd_reduction_rules,
    decision_tree,
    find_matches,
    is_isomorphic,
    load,
    loads,
    normalize,
    oracle_reduce,
    reduce,
    unit_lattice,
    validate_bdd,
)

__all__ = [name for name in dir() if not name.startswith("_")]
