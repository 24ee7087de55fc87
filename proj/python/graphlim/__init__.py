"""Dense graph limit numerics: densities, cut metrics, regularity, sampling."""

from ._graphlim import (
    CUT_EXACT_CAP,
    RESTRICTED_EXACT_CAP,
    TOOL_VERSION,
    AnalyticGraphon,
    CapacityError,
    InputError,
    StepGraphon,
    WeightedGraph,
    averaged,
    blow_up,
    canonical_form,
    concentration_experiment,
    constant_graphon,
    coupled_randomize,
    coupled_w_random,
    cut_norm,
    cut_value,
    d_cut,
    delta_cut,
    delta_hat,
    density_profile,
    discretize,
    disjoint_union,
    edit_distance,
    equitable_weak_partition,
    estimate_parameter,
    evaluate_parameter,
    graph_from_canonical,
    graph_norms,
    graphon_norms,
    graphon_value,
    halfgraph_graphon,
    hat_f,
    hom_count,
    induce_sample,
    inf_to_one_norm,
    is_regular_pair,
    is_regular_partition,
    load_graph,
    load_graphon,
    maxcut_density,
    min_graphon,
    overlay_cost,
    permuted,
    profile_distance,
    quotient,
    randomize,
    restricted_cut_norm,
    save_graph,
    save_graphon,
    simple_approximation,
    small_graph_catalog,
    split_node,
    step_from_graph,
    t_density,
    t_graphon,
    t_graphon_mc,
    trace_c4_norm,
    uniform_attachment_graph,
    w_random_simple,
    w_random_weighted,
    weak_regular_partition,
)

__version__ = TOOL_VERSION

__all__ = [
    "AnalyticGraphon",
    "CapacityError",
    "CUT_EXACT_CAP",
    "InputError",
    "RESTRICTED_EXACT_CAP",
    "StepGraphon",
    "TOOL_VERSION",
    "WeightedGraph",
    "averaged",
    "blow_up",
    "canonical_form",
    "concentration_experiment",
    "constant_graphon",
    "coupled_randomize",
    "coupled_w_random",
    "cut_norm",
    "cut_value",
    "d_cut",
    "delta_cut",
    "delta_hat",
    "density_profile",
    "discretize",
    "disjoint_union",
    "edit_distance",
    "equitable_weak_partition",
    "estimate_parameter",
    "evaluate_parameter",
    "graph_from_canonical",
    "graph_norms",
    "graphon_norms",
    "graphon_value",
    "halfgraph_graphon",
    "hat_f",
    "hom_count",
    "induce_sample",
    "inf_to_one_norm",
    "is_regular_pair",
    "is_regular_partition",
    "load_graph",
    "load_graphon",
    "maxcut_density",
    "min_graphon",
    "overlay_cost",
    "permuted",
    "profile_distance",
    "quotient",
    "randomize",
    "restricted_cut_norm",
    "save_graph",
    "save_graphon",
    "simple_approximation",
    "small_graph_catalog",
    "split_node",
    "step_from_graph",
    "t_density",
    "t_graphon",
    "t_graphon_mc",
    "trace_c4_norm",
    "uniform_attachment_graph",
    "w_random_simple",
    "w_random_weighted",
    "weak_regular_partition",
]
