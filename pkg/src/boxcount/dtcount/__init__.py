"""
The DT vertex model

Toric graphs, vertex and edge weights, and their partition functions.
"""

from boxcount.dtcount.geometry import (CATALOG, Edge, Slot,  # NOQA
                                       ToricGraph, Vertex, builtin)
from boxcount.dtcount.model import (dtpt_divide, virdim_normalize,  # NOQA
                                    z_partition_function, zx2)
from boxcount.dtcount.vertex import (EdgeWeight, clear_cache,  # NOQA
                                     cohomological_degree0, degree0_series,
                                     edge_weight, vertex_series)
