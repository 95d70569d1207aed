from .number_theory import (
    Factorization,
    factorize,
    is_prime,
    euler_phi,
    iterated_phi,
    mod_pow,
    mod_inverse,
    crt_solve,
    is_cyclic_unit_group,
    multiplicative_order,
    find_primitive_root,
    totient_sieve,
)

from .discrete_log import DlogMethod, discrete_log

from .unit_groups import (
    UnitGroupTower,
    GroupElement,
    build_tower,
    enumerate_u_k,
    iso_f,
    iso_f_inv,
    iso_table,
    u3_generator,
    is_u2_member,
    is_u3_member,
    op_oplus,
    op_otimes,
    op_pow,
    op_inverse,
)

__all__ = [
    # Number theory
    'Factorization',
    'factorize',
    'is_prime',
    'euler_phi',
    'iterated_phi',
    'mod_pow',
    'mod_inverse',
    'crt_solve',
    'is_cyclic_unit_group',
    'multiplicative_order',
    'find_primitive_root',
    'totient_sieve',

    # Discrete logarithms
    'DlogMethod',
    'discrete_log',

    # Unit group tower
    'UnitGroupTower',
    'GroupElement',
    'build_tower',
    'enumerate_u_k',
    'iso_f',
    'iso_f_inv',
    'iso_table',
    'u3_generator',
    'is_u2_member',
    'is_u3_member',
    'op_oplus',
    'op_otimes',
    'op_pow',
    'op_inverse',
]
