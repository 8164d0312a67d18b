"""bookramsey - witnesses, encodings and exhaustive search for book Ramsey numbers."""

__version__ = "0.3.0"
__author__ = "bookramsey developers"
__email__ = ""
__license__ = "MIT"
__url__ = "https://github.com/bookramsey/bookramsey"

from .circulant import (
    BlockCirculantSpec,
    CyclicGroup,
    check_book_conditions,
    check_group_conditions,
    common_neighbors_formula,
    complement_spec,
    delta,
    expand,
    format_spec_text,
    parse_spec_text,
    sigma,
)
from .config import EnvConfig
from .field import (
    FiniteField,
    field_of_order,
    make_field,
    paley_book_graph,
    paley_book_report,
    paley_graph,
    residue_difference_counts,
    residues,
)
from .graphs import (
    BookProfile,
    Graph,
    book_profile,
    common_neighbors,
    complement,
    from_graph6,
    is_ramsey_graph,
    max_book_pages,
    parse_adjacency_text,
    to_graph6,
)
from .ipenc import IpModel, encode_block_circulant_ip, solution_to_spec, write_lp
from .satenc import CnfFormula, VarMap, encode_books, encode_naive, model_to_graph, write_dimacs
from .search import canonical_form, enumerate_ramsey_graphs, is_isomorphic, ramsey_number_smallcase
from .types.exceptions import (
    BookRamseyError,
    BudgetExceededError,
    ConfigurationError,
    DecodeError,
    EncodingSizeError,
    InconclusiveError,
    ParseError,
    RegistryError,
    ValidationError,
    WitnessRejectedError,
)
from .types.models import (
    BookParams,
    BoundInterval,
    BoundKind,
    BoundRecord,
    ConditionReport,
    EnumerationResult,
    IpOptions,
    RunConfig,
    SmallcaseResult,
    VerificationReport,
    WitnessRef,
)
from .witness import BoundsRegistry, load_appendix, registry_put, registry_query, verify_appendix, verify_bound

__all__ = [
    "Graph",
    "BookProfile",
    "book_profile",
    "common_neighbors",
    "complement",
    "max_book_pages",
    "is_ramsey_graph",
    "to_graph6",
    "from_graph6",
    "parse_adjacency_text",
    "BlockCirculantSpec",
    "CyclicGroup",
    "delta",
    "sigma",
    "expand",
    "common_neighbors_formula",
    "complement_spec",
    "check_book_conditions",
    "check_group_conditions",
    "parse_spec_text",
    "format_spec_text",
    "FiniteField",
    "make_field",
    "field_of_order",
    "residues",
    "residue_difference_counts",
    "paley_graph",
    "paley_book_graph",
    "paley_book_report",
    "CnfFormula",
    "VarMap",
    "encode_books",
    "encode_naive",
    "write_dimacs",
    "model_to_graph",
    "IpModel",
    "encode_block_circulant_ip",
    "write_lp",
    "solution_to_spec",
    "canonical_form",
    "is_isomorphic",
    "enumerate_ramsey_graphs",
    "ramsey_number_smallcase",
    "BoundsRegistry",
    "load_appendix",
    "verify_bound",
    "verify_appendix",
    "registry_query",
    "registry_put",
    "EnvConfig",
    "BookParams",
    "BoundInterval",
    "BoundKind",
    "BoundRecord",
    "ConditionReport",
    "EnumerationResult",
    "IpOptions",
    "RunConfig",
    "SmallcaseResult",
    "VerificationReport",
    "WitnessRef",
    "BookRamseyError",
    "BudgetExceededError",
    "ConfigurationError",
    "DecodeError",
    "EncodingSizeError",
    "InconclusiveError",
    "ParseError",
    "RegistryError",
    "ValidationError",
    "WitnessRejectedError",
]

__version_info__ = tuple(int(x) for x in __version__.split("."))

__package_info__ = {
    "name": "bookramsey",
    "version": __version__,
    "author": __author__,
    "license": __license__,
    "url": __url__,
    "description": "Witnesses, SAT/IP encodings and exhaustive search for book Ramsey numbers",
}
