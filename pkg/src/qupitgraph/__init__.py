"""Graph states over F_p: local Clifford rewrites, measurements and equivalence."""
from .errors import (InternalError, InvalidInput, InvalidParameter, NotInvertible, ParseError,
                     QupitGraphError, ResourceLimit, UnsupportedModulus)
from .graph import (LabeledGraph, complement_op, connected_components, is_isomorphic, orbit,
                    scale_op, zero_star)
from .stabilizer import (GeneratorMatrix, LocalCliffordDiag, PauliElement, apply_local_clifford,
                         to_graph_form, validate)
from .equivalence import are_equivalent, equivalent_bruteforce, verify_witness
from .measurement import MeasurementSpec, measure, measure_by_stabilizer

__version__ = "0.1.0"
