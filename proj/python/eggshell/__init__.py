"""Monomial norms, commutator eigenvalues and summability cut-offs on egg domains.

Domains and zeta specs are passed as JSON text (or a path to a JSON file):

    >>> import eggshell
    >>> eggshell.predicted_threshold('{"blocks":[{"p":[3,1],"a":1}]}', "self:0:0")
    3.0
"""

from ._core import (  # noqa: F401
    BracketError,
    DomainError,
    ResourceError,
    all_kinds,
    brute_shell_sums,
    critical_b,
    dimension,
    eigenvalue,
    empirical_threshold,
    exact_ratio,
    expansion_value,
    family_of,
    log_gamma,
    log_multibeta,
    log_norm,
    mc_norm_oracle,
    module_threshold,
    predicted_threshold,
    reduce_group,
    shell_sums,
)
