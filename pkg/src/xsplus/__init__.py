"""xorshift+ / xorshift* generators and the GF(2) machinery around them."""

from .engine import (
    PRESETS,
    GeneratorConfig,
    GeneratorState,
    ShiftTriple,
    Xorshift,
    charpoly,
    lowest_bit_stream,
    next_output,
    reverse_output,
    seed_from_u64,
)
from .gf2poly import (
    FactorTable,
    Gf2Poly,
    berlekamp_massey,
    is_primitive,
    load_factor_table,
    poly_mulmod,
    poly_powmod,
    validate_factor_table,
    weight,
)
from .jump import JumpMask, apply_jump, jump_poly

__version__ = "0.1.0"
