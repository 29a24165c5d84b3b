"""Abelian-group CSPs, their variable gadgets and the additive reduction."""
from .groups import (
    AbelianGroup,
    SubgroupPredicate,
    check_pairwise_independent_subgroup,
    sum_zero_predicate,
    xor3_predicate,
)
from .gadget import (
    VariableGadget,
    enumerate_gadget_automorphisms,
    gadget_audit,
    max_clique_size,
    row_gadget,
    shift_amount,
    variable_gadget,
)
from .csp import (
    AdditiveCspInstance,
    additive_completeness_map,
    additive_decode,
    encode_additive,
    from_3xor,
    homogenize_additive,
    label_extended_graph,
    plant_additive,
    reduce_additive,
    sample_random_additive,
    val_additive,
)
