"""Network amplitudes and checkerboard paths."""

from .checkerboard import (
    MAX_HORIZON,
    LightconeLattice,
    checkerboard_evolve,
    checkerboard_path_oracle,
    path_count,
)
from .network import (
    TEST_GRAPHS,
    EnumerationCapExceeded,
    Network,
    PenroseResult,
    bridged_graph,
    chain_amplitude,
    chain_network,
    components,
    cube_graph,
    disjoint_union,
    face_count,
    is_planar_embedding,
    k4_graph,
    k33_graph,
    levi_civita,
    network_partition_function,
    parse_network,
    penrose_count,
    penrose_weight,
    prism_graph,
    proper_coloring_count,
    rotation_from_coordinates,
    theta_graph,
)
