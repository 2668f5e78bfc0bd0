from .branches import principal_log, principal_pow
from .characters import (
    DiscriminantSplit,
    character_table,
    is_fundamental_discriminant,
    kronecker,
    split_discriminant,
)
from .factorization import (
    Factorization,
    SieveTables,
    dirichlet_convolve,
    divisors,
    euler_phi,
    factorize,
    mobius,
    sieve_tables,
    squarefree_decomposition,
    tau0,
)
from .kloosterman import (
    diagonal_spectrum,
    kloosterman_direct,
    kloosterman_fast,
    kloosterman_row,
    modular_inverses,
    ramanujan_sum,
    salie_sum,
    weil_bound,
)

__all__ = [
    "principal_log",
    "principal_pow",
    "DiscriminantSplit",
    "character_table",
    "is_fundamental_discriminant",
    "kronecker",
    "split_discriminant",
    "Factorization",
    "SieveTables",
    "dirichlet_convolve",
    "divisors",
    "euler_phi",
    "factorize",
    "mobius",
    "sieve_tables",
    "squarefree_decomposition",
    "tau0",
    "diagonal_spectrum",
    "kloosterman_direct",
    "kloosterman_fast",
    "kloosterman_row",
    "modular_inverses",
    "ramanujan_sum",
    "salie_sum",
    "weil_bound",
]
