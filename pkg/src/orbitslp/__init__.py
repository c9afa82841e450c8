"""orbitslp: branch-free straight-line programs that separate group orbits."""

from .compiler import (CellCapError, CompileError, CompiledSeparator, GroupSpec,
                       OrbitParams, RepSpec, compile_separator, degree_bound,
                       evaluate, orbit_oracle_finite, separate, stats)
from .field import GF, QQ, FieldError, PrimeField, RationalField, field_from_json
from .groebner import (GroebnerBasis, buchberger, hilbert_leq, ideal_k_basis,
                       normal_form)
from .linalg import (collect_rows_program, kernel_program, oracle_nullspace,
                     oracle_rank, oracle_rref, oracle_trref, rref_program,
                     row_swap_program, swap_cascade_program,
                     triangular_rref_program)
from .polynomials import (MonomialIndex, Polynomial, PolynomialParseError,
                          coeff_vector, monomials_leq, parse_polynomial)
from .slp import (Program, ProgramBuilder, ProgramError, census, compose,
                  execute, execute_trace, identity_program, load_program,
                  program_from_dict, program_to_dict, save_program)

__version__ = "0.1.0"

__all__ = [
    "CellCapError", "CompileError", "CompiledSeparator", "GroupSpec",
    "OrbitParams", "RepSpec", "compile_separator", "degree_bound", "evaluate",
    "orbit_oracle_finite", "separate", "stats",
    "GF", "QQ", "FieldError", "PrimeField", "RationalField", "field_from_json",
    "GroebnerBasis", "buchberger", "hilbert_leq", "ideal_k_basis", "normal_form",
    "collect_rows_program", "kernel_program", "oracle_nullspace", "oracle_rank",
    "oracle_rref", "oracle_trref", "rref_program", "row_swap_program",
    "swap_cascade_program", "triangular_rref_program",
    "MonomialIndex", "Polynomial", "PolynomialParseError", "coeff_vector",
    "monomials_leq", "parse_polynomial",
    "Program", "ProgramBuilder", "ProgramError", "census", "compose", "execute",
    "execute_trace", "identity_program", "load_program", "program_from_dict",
    "program_to_dict", "save_program",
]
