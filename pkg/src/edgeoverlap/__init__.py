"""Edge overlap for unweighted, weighted, and directed networks.

The package computes per-edge and graph-averaged overlap, evaluates
closed-form mean/variance of overlap under Erdos-Renyi-family null models
(two approximation routes each), validates the formulas by Monte Carlo
simulation, and standardizes/stratifies overlap in multiplex network data.
"""

from .errors import (ConfigError, DomainError, EdgeOverlapError,
                     EmptyInputError, ParseError, ZeroDensityError)
from .graphs import (DirectedGraph, MultiplexEdgeList, NodeAttributes,
                     UndirectedGraph, WeightedGraph, load_attributes,
                     load_edge_list, write_edge_list)
from .metrics import (EdgeOverlapRecord, OverlapArrays, OverlapSummary,
                      UndefinedReason, average_overlap, directed_edge_overlap,
                      edge_overlap, overlap_arrays, weighted_edge_overlap,
                      write_per_edge_csv)
from .nullmodels import (Approach, NullMoments, NullSpec, Variant,
                         directed_moments, expected_min_truncated_poisson,
                         moments, second_order_mean, unweighted_moments,
                         weighted_moments, zero_truncated_poisson_variance)
from .generators import (Family, GeneratorSpec, generate, generate_directed_er,
                         generate_er, generate_wrg)
from .simulate import (ComparisonRow, SimulationSpec, SimulationSummary,
                       compare_to_theory, realization_seed, run_simulation,
                       write_simulation_csv)
from .analysis import (AnalysisConfig, StratumReport, Village, collapse_layers,
                       estimate_p, load_villages, run_analysis, standardize,
                       stratify_edges, write_report_csv, write_report_json)

__version__ = "0.1.0"
