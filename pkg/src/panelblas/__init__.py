"""panelblas: dense linear algebra for small-to-medium matrices.

Matrices live in a panel-major format matched to the access order of the
register-blocked kernels, factorizations are built from the same kernel
machinery as the level-3 routines, and an optional compiled core (with a
pure-Python fallback selected at import) carries the hot loops.
"""

from ._backend import backend_name
from .errors import (DimensionError, FactorizationError, MemoryLayoutError,
                     NotPositiveDefiniteError, PanelBlasError, SingularMatrixError)
from .matstore import (ALIGN, PS, ColMatrix, DenseVector, PanelMatrix, SubRef,
                       allocate_col_matrix, allocate_panel_matrix, allocate_vector,
                       create_panel_matrix, create_vector, element_offset,
                       get_element, memsize_panel_matrix, memsize_vector,
                       read_fixture, set_element, write_fixture)
from . import apps, bench, kernels, level12, level3, pack, ref_impl

__version__ = "0.1.0"

__all__ = [
    "ALIGN", "PS", "ColMatrix", "DenseVector", "PanelMatrix", "SubRef",
    "allocate_col_matrix", "allocate_panel_matrix", "allocate_vector",
    "apps", "backend_name", "bench", "create_panel_matrix", "create_vector",
    "element_offset", "get_element", "kernels", "level12", "level3",
    "memsize_panel_matrix", "memsize_vector", "pack", "read_fixture",
    "ref_impl", "set_element", "write_fixture",
    "DimensionError", "FactorizationError", "MemoryLayoutError",
    "NotPositiveDefiniteError", "PanelBlasError", "SingularMatrixError",
]
